#include "dagger/json_io.hpp"

#include <fstream>
#include <sstream>

namespace dagger::io {

namespace {

[[noreturn]] void schema(const std::string& msg) { fail(ErrorKind::parse_error, msg); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

Rational scalar(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) schema("scalars must be strings like \"3/25\" or integers");
    return parse_rational(j.get<std::string>());
}

ExtRational ext_scalar(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return ExtRational::infinity();
    return ExtRational(scalar(j));
}

Context context_from_json(const json& j) {
    const auto& p = field(j, "p");
    if (!p.is_number_integer()) schema("\"p\" must be an integer");
    const auto& vars = field(j, "vars");
    if (!vars.is_array()) schema("\"vars\" must be an array of names");
    Context ctx{Prime(p.get<long>()), {}};
    for (const auto& v : vars) {
        if (!v.is_string()) schema("variable names must be strings");
        ctx.vars.push_back(v.get<std::string>());
    }
    return ctx;
}

void put_context(json& j, const Context& ctx) {
    j["p"] = ctx.prime.value();
    j["vars"] = ctx.vars;
}

bool flag(const json& j, const char* key) {
    if (!j.contains(key)) return false;
    if (!j.at(key).is_boolean()) schema(std::string("\"") + key + "\" must be a boolean");
    return j.at(key).get<bool>();
}

}  // namespace

json to_json(const OSeries::TermMap& terms) {
    json arr = json::array();
    for (const auto& [nu, a] : terms) arr.push_back(json{{"e", nu}, {"c", to_string(a)}});
    return arr;
}

OSeries::TermMap terms_from_json(const json& j, std::size_t nvars) {
    if (!j.is_array()) schema("\"terms\" must be an array");
    OSeries::TermMap out;
    for (const auto& t : j) {
        const auto& e = field(t, "e");
        if (!e.is_array() || e.size() != nvars) schema("exponent vector has the wrong length");
        MultiIndex nu;
        for (const auto& x : e) {
            if (!x.is_number_integer()) schema("exponents must be integers");
            nu.push_back(x.get<long>());
        }
        if (out.contains(nu)) schema("repeated exponent vector");
        out.emplace(std::move(nu), scalar(field(t, "c")));
    }
    return out;
}

json to_json(const GrowthCertificate& c) {
    return json{{"t", to_string(c.slope)}, {"c", to_string(c.offset)}, {"M", c.truncation.to_string()}};
}

GrowthCertificate certificate_from_json(const json& j) {
    return GrowthCertificate{scalar(field(j, "t")), scalar(field(j, "c")), ext_scalar(field(j, "M"))};
}

json to_json(const OSeries& f) {
    json j;
    put_context(j, f.context());
    j["terms"] = to_json(f.terms());
    j["cert"] = to_json(f.certificate());
    if (f.is_laurent()) j["laurent"] = true;
    if (f.is_completed()) j["completed"] = true;
    return j;
}

OSeries series_from_json(const json& j) {
    Context ctx = context_from_json(j);
    auto terms = terms_from_json(field(j, "terms"), ctx.nvars());
    std::erase_if(terms, [](const auto& kv) { return sgn(kv.second) == 0; });
    return OSeries(ctx, std::move(terms), certificate_from_json(field(j, "cert")), flag(j, "completed"),
                   flag(j, "laurent"));
}

json to_json(const DaggerPresentation& P) {
    json j;
    j["family"] = std::string(to_string(P.family()));
    put_context(j, P.context());
    if (P.family() == Family::principal) j["generator"] = to_json(P.generators().front());
    if (P.family() == Family::hyperelliptic) j["Q"] = to_json(P.hyperelliptic_q());
    if (P.is_completed()) j["completed"] = true;
    return j;
}

DaggerPresentation presentation_from_json(const json& j) {
    const auto& fam = field(j, "family");
    if (!fam.is_string()) schema("\"family\" must be a string");
    std::string family = fam.get<std::string>();
    Context ctx = context_from_json(j);
    auto build = [&]() {
        if (family == "free") return DaggerPresentation::free(ctx);
        if (family == "torus") return DaggerPresentation::torus(ctx);
        if (family == "principal-distinguished" || family == "principal") {
            auto g = series_from_json(field(j, "generator"));
            if (!(g.context() == ctx)) fail(ErrorKind::context_mismatch, "generator context differs");
            return DaggerPresentation::principal(g);
        }
        if (family == "hyperelliptic") return DaggerPresentation::hyperelliptic(ctx, series_from_json(field(j, "Q")));
        fail(ErrorKind::unsupported_family, "unknown family \"" + family + "\"");
    };
    auto P = build();
    return flag(j, "completed") ? complete_presentation(P) : P;
}

json to_json(const LaurentTail& a) {
    json j;
    put_context(j, a.context());
    j["terms"] = to_json(a.terms());
    const auto& d = a.decay();
    j["decay"] = json{{"u", to_string(d.slope)}, {"c", to_string(d.offset)}, {"M", d.truncation.to_string()}};
    return j;
}

LaurentTail tail_from_json(const json& j) {
    Context ctx = context_from_json(j);
    auto terms = terms_from_json(field(j, "terms"), ctx.nvars());
    const auto& d = field(j, "decay");
    return LaurentTail(ctx, std::move(terms),
                       DecayCertificate{scalar(field(d, "u")), scalar(field(d, "c")), ext_scalar(field(d, "M"))});
}

json to_json(const DistinguishedReport& r) {
    return json{{"var", r.variable + 1},
                {"degree", r.degree},
                {"norm", to_string(r.norm)},
                {"margin", r.margin.to_string()},
                {"unit_margin", r.unit_margin.to_string()}};
}

json to_json(const DifferentialForm& w) {
    json comps = json::array();
    const bool hyper = w.presentation.family() == Family::hyperelliptic;
    Context nctx = normal_form_context(w.presentation);
    for (const auto& [basis, f] : w.components) {
        std::string label;
        for (auto i : basis) label += (label.empty() ? "d" : "^d") + nctx.vars[i];
        if (hyper && w.degree == 1) label = "d" + nctx.vars[0] + "/" + nctx.vars[1];
        comps.push_back(json{{"basis", label.empty() ? "1" : label}, {"coefficient", to_json(f)}});
    }
    return json{{"degree", w.degree}, {"components", comps}};
}

json to_json(const CoverSection& h) {
    static const char* names[] = {"disc", "annulus", "circle"};
    json j{{"chart", names[static_cast<int>(h.chart)]}, {"terms", to_json(h.terms)}, {"cert", to_json(h.cert)}};
    if (h.completed) j["completed"] = true;
    return j;
}

json to_json(const CohomologyReport& r) {
    json degs = json::array();
    for (const auto& d : r.degrees) {
        json basis = json::array();
        for (const auto& b : d.basis) basis.push_back(to_json(b));
        degs.push_back(json{{"degree", d.degree}, {"dimension", d.dimension}, {"basis", basis}});
    }
    return json{{"dimensions", r.dimensions()}, {"degrees", degs}, {"notes", r.notes}};
}

json to_json(const ContrastReport& r) {
    json vals = json::array();
    for (const auto& [e, v] : r.valuations) vals.push_back(json{{"exponent", e}, {"valuation", to_string(v)}});
    json fits = json::array();
    for (const auto& row : r.best_fit) fits.push_back(json{{"depth", row.depth}, {"best_slope", to_string(row.best_slope)}});
    json j{{"p", r.p},
           {"depth", r.depth},
           {"antiderivative_valuations", vals},
           {"best_fit_slopes", fits},
           {"monotone_decreasing", r.monotone_decreasing},
           {"completed_rejection", r.completed_rejection},
           {"dagger_integrates", r.dagger_integrates}};
    if (r.dagger_witness) j["dagger_witness"] = to_json(*r.dagger_witness);
    if (r.dagger_integral) j["dagger_integral"] = to_json(*r.dagger_integral);
    return j;
}

json to_json(const PairingMatrix& m) {
    json rows = json::array();
    for (const auto& row : m.entries) {
        json r = json::array();
        for (const auto& x : row) r.push_back(to_string(x));
        rows.push_back(r);
    }
    return json{{"rows", m.rows}, {"cols", m.cols}, {"matrix", rows}};
}

json error_json(const DaggerError& e, const std::string& input) {
    json err{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (!input.empty()) err["input"] = input;
    return json{{"error", err}};
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::parse_error, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        fail(ErrorKind::parse_error, path + ": " + e.what());
    }
}

}  // namespace dagger::io
