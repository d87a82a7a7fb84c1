#include "qnet/io.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace qnet {

double parse_angle(const Json& v) {
    if (v.is_number()) return v.get<double>();
    if (!v.is_string()) throw std::invalid_argument("angle: expected number or string");
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        std::size_t pos = 0;
        const double val = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("angle: trailing characters in '" + s + "'");
        return val;
    }
    const double num = std::stod(s.substr(0, slash));
    const double den = std::stod(s.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("angle: zero denominator in '" + s + "'");
    return num / den * std::numbers::pi;
}

AngleSet angles_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "optimal") return optimal_separable_angles();
    if (!j.is_object()) throw std::invalid_argument("angles: expected object or \"optimal\"");
    auto need = [&](const char* key) {
        if (!j.contains(key)) throw std::invalid_argument(std::string("angles: missing '") + key + "'");
        return parse_angle(j.at(key));
    };
    AngleSet a;
    a.a1 = need("a1");
    a.a2 = need("a2");
    a.b0_free = need("b0_free");
    a.b1_given_b0 = {need("b1_given_b0_0"), need("b1_given_b0_1")};
    a.b1_free = need("b1_free");
    a.b0_given_b1 = {need("b0_given_b1_0"), need("b0_given_b1_1")};
    a.c1 = need("c1");
    a.c2 = need("c2");
    if (!a.all_finite()) throw std::invalid_argument("angles: non-finite value");
    return a;
}

Strategy strategy_from_json(const Json& j) {
    double nu1 = 0.0, nu2 = 0.0;
    if (j.contains("nu")) {
        nu1 = nu2 = j.at("nu").get<double>();
    } else {
        if (j.contains("nu1")) nu1 = j.at("nu1").get<double>();
        if (j.contains("nu2")) nu2 = j.at("nu2").get<double>();
    }
    Strategy s{werner(nu1), werner(nu2),
               j.contains("angles") ? angles_from_json(j.at("angles"))
                                    : optimal_separable_angles(),
               CentralConfig::feedback(0.5)};
    if (j.contains("central")) {
        const Json& c = j.at("central");
        const std::string mode = c.value("mode", "feedback");
        if (mode == "feedback") {
            s.central = CentralConfig::feedback(c.value("p", 0.5), c.value("alpha0", 1.0),
                                                c.value("alpha1", 1.0));
        } else if (mode == "explicit") {
            if (!c.contains("povm")) throw std::invalid_argument("central: explicit mode needs 'povm'");
            Povm povm;
            povm.dim = 4;
            for (const Json& el : c.at("povm")) {
                ComplexMatrix m(4, 4);
                for (int r = 0; r < 4; ++r)
                    for (int col = 0; col < 4; ++col) {
                        const Json& cell = el.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(col));
                        if (cell.is_array())
                            m(r, col) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
                        else
                            m(r, col) = cell.get<double>();
                    }
                povm.elements.push_back(m);
                povm.labels.push_back(std::to_string(povm.labels.size()));
            }
            if (povm.elements.size() != 2)
                throw std::invalid_argument("central: explicit POVM must be binary");
            PovmReport rep = validate_povm(povm);
            if (!rep.ok(1e-7)) throw std::invalid_argument("central: explicit POVM invalid");
            s.central = CentralConfig::explicit_binary(std::move(povm));
        } else {
            throw std::invalid_argument("central: unknown mode '" + mode + "'");
        }
    }
    return s;
}

Json behavior_to_json(const Behavior& b) {
    Json table = Json::array();
    const Behavior cb = b.clipped();
    for (int x = 0; x < 2; ++x) {
        Json jx = Json::array();
        for (int z = 0; z < 2; ++z) {
            Json jz = Json::array();
            for (int a = 0; a < 2; ++a) {
                Json ja = Json::array();
                for (int bb = 0; bb < 2; ++bb) {
                    Json jb = Json::array();
                    for (int c = 0; c < 2; ++c) jb.push_back(cb.at(x, z, a, bb, c));
                    ja.push_back(jb);
                }
                jz.push_back(ja);
            }
            jx.push_back(jz);
        }
        table.push_back(jx);
    }
    return Json{{"outcomes", {2, 2, 2}}, {"settings", {2, 2}}, {"table", table}};
}

Behavior behavior_from_json(const Json& j) {
    if (!j.contains("table")) throw std::invalid_argument("behavior: missing 'table'");
    Behavior b;
    const Json& t = j.at("table");
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    for (int c = 0; c < 2; ++c)
                        b.at(x, z, a, bb, c) = t.at(static_cast<std::size_t>(x))
                                                   .at(static_cast<std::size_t>(z))
                                                   .at(static_cast<std::size_t>(a))
                                                   .at(static_cast<std::size_t>(bb))
                                                   .at(static_cast<std::size_t>(c))
                                                   .get<double>();
    return b;
}

Json witness_to_json(const WitnessResult& w) {
    return Json{{"fnn1", w.fnn1},       {"fnn2", w.fnn2},
                {"margin1", w.margin1}, {"margin2", w.margin2},
                {"violated", {w.violated1, w.violated2}},
                {"simultaneous", w.simultaneous}};
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void write_csv(std::ostream& os, const std::vector<std::string>& header_comments,
               const std::string& columns,
               const std::vector<std::vector<std::string>>& rows) {
    for (const auto& h : header_comments) os << "# " << h << "\n";
    os << columns << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << row[i];
        }
        os << "\n";
    }
}

}  // namespace qnet
