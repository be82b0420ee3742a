#include "eulat/io.hpp"

#include <fstream>

namespace eulat {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

FacetListFile parse_facet_list(const json& j) {
    FacetListFile f;
    auto fv = j.at("f");
    if (!fv.is_array() || fv.size() != 4) throw std::runtime_error("facet list: bad f vector");
    f.f = {fv[0].get<long long>(), fv[1].get<long long>(), fv[2].get<long long>(),
           fv[3].get<long long>()};
    for (const auto& fa : j.at("facets")) {
        std::vector<int> verts;
        for (const auto& v : fa) verts.push_back(v.get<int>());
        std::sort(verts.begin(), verts.end());
        f.facets.push_back(verts);
    }
    return f;
}

FacetListFile load_facet_list(const std::string& path) { return parse_facet_list(load_json(path)); }

json facet_list_json(const FVector& f, const std::vector<std::vector<int>>& facets) {
    json j;
    j["f"] = {f.f0, f.f1, f.f2, f.f3};
    j["facets"] = facets;
    return j;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

namespace {

template <size_t N>
std::vector<std::array<Rational, N>> load_points(const std::string& path) {
    json j = load_json(path);
    std::vector<std::array<Rational, N>> pts;
    for (const auto& p : j.at("points")) {
        if (!p.is_array() || p.size() != N) throw std::runtime_error("coords: bad point");
        std::array<Rational, N> q;
        for (size_t i = 0; i < N; ++i) {
            if (p[i].is_string())
                q[i] = parse_rational(p[i].get<std::string>());
            else
                q[i] = Rational(p[i].get<long long>());
        }
        pts.push_back(q);
    }
    return pts;
}

}  // namespace

std::vector<Point3> load_coords3(const std::string& path) { return load_points<3>(path); }
std::vector<Point4> load_coords4(const std::string& path) { return load_points<4>(path); }

namespace {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Seed: return "seed";
        case Rule::CoplanarZero: return "coplanar-zero";
        case Rule::FacetSide: return "facet-side";
        case Rule::GpPropagate: return "gp-propagate";
    }
    return "?";
}

Rule rule_of(const std::string& s) {
    if (s == "seed") return Rule::Seed;
    if (s == "coplanar-zero") return Rule::CoplanarZero;
    if (s == "facet-side") return Rule::FacetSide;
    if (s == "gp-propagate") return Rule::GpPropagate;
    throw std::runtime_error("unknown certificate rule " + s);
}

json violation_json(const GpViolation& v) {
    return {{"sigma", v.sigma}, {"quad", v.quad}, {"products", v.products}};
}

GpViolation parse_violation(const json& j) {
    GpViolation v;
    for (int i = 0; i < 3; ++i) v.sigma[size_t(i)] = j.at("sigma")[size_t(i)].get<int>();
    for (int i = 0; i < 4; ++i) v.quad[size_t(i)] = j.at("quad")[size_t(i)].get<int>();
    for (int i = 0; i < 3; ++i) v.products[size_t(i)] = j.at("products")[size_t(i)].get<int>();
    return v;
}

}  // namespace

json certificate_json(const Certificate& cert) {
    json steps = json::array();
    for (const auto& st : cert.steps) {
        json s;
        s["rule"] = rule_name(st.rule);
        s["conclusion"] = {{"basis", st.basis}, {"sign", st.sign}};
        if (st.rule == Rule::Seed || st.rule == Rule::CoplanarZero || st.rule == Rule::FacetSide)
            s["facet"] = st.facet;
        if (!st.premises.empty()) s["premises"] = st.premises;
        if (st.rule == Rule::GpPropagate) {
            s["sigma"] = st.sigma;
            s["quad"] = st.quad;
        }
        steps.push_back(s);
    }
    json j;
    j["base"] = cert.base;
    j["steps"] = steps;
    j["violation"] = violation_json(cert.violation);
    json all = json::array();
    for (const auto& v : cert.all_violations) all.push_back(violation_json(v));
    j["all_violations"] = all;
    return j;
}

Certificate parse_certificate(const json& j) {
    Certificate cert;
    for (int i = 0; i < 4; ++i) cert.base[size_t(i)] = j.at("base")[size_t(i)].get<int>();
    for (const auto& s : j.at("steps")) {
        DerivationStep st;
        st.rule = rule_of(s.at("rule").get<std::string>());
        for (int i = 0; i < 5; ++i)
            st.basis[size_t(i)] = s.at("conclusion").at("basis")[size_t(i)].get<int>();
        st.sign = s.at("conclusion").at("sign").get<int>();
        if (s.contains("facet")) st.facet = s.at("facet").get<int>();
        if (s.contains("premises"))
            for (const auto& p : s.at("premises")) {
                std::array<int, 5> b;
                for (int i = 0; i < 5; ++i) b[size_t(i)] = p[size_t(i)].get<int>();
                st.premises.push_back(b);
            }
        if (s.contains("sigma"))
            for (int i = 0; i < 3; ++i) st.sigma[size_t(i)] = s.at("sigma")[size_t(i)].get<int>();
        if (s.contains("quad"))
            for (int i = 0; i < 4; ++i) st.quad[size_t(i)] = s.at("quad")[size_t(i)].get<int>();
        cert.steps.push_back(st);
    }
    cert.violation = parse_violation(j.at("violation"));
    if (j.contains("all_violations"))
        for (const auto& v : j.at("all_violations")) cert.all_violations.push_back(parse_violation(v));
    return cert;
}

}  // namespace eulat
