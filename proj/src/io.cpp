#include "qrep/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace qrep {

json to_json(HalfInt h)
{
    return h.str();
}

HalfInt half_int_from_json(const json& j, const std::string& field)
{
    try {
        if (j.is_string())
            return HalfInt::parse(j.get<std::string>());
        if (j.is_number_integer())
            return HalfInt(j.get<int>());
        if (j.is_number_float()) {
            const double twice = 2.0 * j.get<double>();
            if (std::floor(twice) == twice && std::abs(twice) < 1e9)
                return HalfInt::from_twice(static_cast<int>(twice));
        }
    } catch (const Error& e) {
        throw SpecError(field, e.what());
    }
    throw SpecError(field, "expected a half-integer such as \"3/2\"");
}

json to_json(cplx z)
{
    return json{{"re", z.real()}, {"im", z.imag()}};
}

cplx complex_from_json(const json& j, const std::string& field)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_string())
        return {half_int_from_json(j, field).to_double(), 0.0};
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (key != "re" && key != "im")
                throw SpecError(field, "unexpected key \"" + key + "\"");
            if (!value.is_number())
                throw SpecError(field + "." + key, "expected a number");
        }
        if (!j.contains("re"))
            throw SpecError(field, "missing \"re\"");
        return {j.at("re").get<double>(), j.value("im", 0.0)};
    }
    throw SpecError(field, "expected a number, a half-integer string or {\"re\", \"im\"}");
}

json to_json(const std::vector<HalfInt>& v)
{
    json out = json::array();
    for (HalfInt h : v)
        out.push_back(to_json(h));
    return out;
}

json to_json(const GTPattern& p)
{
    json rows = json::array();
    for (int k = 2; k <= p.n(); ++k) {
        const auto r = p.row(k);
        rows.push_back(to_json(std::vector<HalfInt>(r.begin(), r.end())));
    }
    return rows;
}

json to_json(const HomResult& h)
{
    return json{{"dim", h.dim}, {"largest_zero_singular_value", h.largest_zero},
                {"smallest_nonzero_singular_value", h.smallest_nonzero}};
}

json to_json(const VerificationReport& r)
{
    json out;
    out["residuals"] = json::object();
    for (const auto& [name, v] : r.residuals)
        out["residuals"][name] = v;
    out["max_residual"] = max_residual(r.residuals);
    out["tolerances"] = json{{"residual", r.tol.residual}, {"rank", r.tol.rank}};
    out["depth"] = r.depth;
    out["evidence_only"] = r.evidence_only;
    if (r.commutant)
        out["commutant"] = to_json(*r.commutant);
    if (r.expected_commutant)
        out["expected_commutant"] = *r.expected_commutant;
    if (r.intertwiner)
        out["intertwiner"] = to_json(*r.intertwiner);
    if (r.expected_intertwiner)
        out["expected_intertwiner"] = *r.expected_intertwiner;
    if (!r.spectra.empty()) {
        out["spectra"] = json::object();
        for (const auto& [name, values] : r.spectra) {
            json list = json::array();
            for (cplx v : values)
                list.push_back(to_json(v));
            out["spectra"][name] = list;
        }
    }
    out["pass"] = r.pass;
    return out;
}

json to_json(const IrreducibilityVerdict& v)
{
    json out{{"irreducible", v.irreducible}, {"reason", v.reason}};
    out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
    return out;
}

json to_json(const ProbeResult& p)
{
    json cuts = json::array();
    for (const CouplingCut& c : p.cuts) {
        cuts.push_back(json{{"from", to_json(c.from.entries)},
                            {"slot", c.slot + 1},
                            {"raising_vanishes", c.raising_vanishes},
                            {"lowering_vanishes", c.lowering_vanishes},
                            {"leak", c.leak},
                            {"invariant", c.invariant}});
    }
    return json{{"reducible", p.reducible}, {"cuts", cuts}};
}

namespace {

const std::set<std::string> kSoFamilies{"so-classical", "so-nonclassical", "so-tprime", "so-onedim"};
const std::set<std::string> kIsoFamilies{"iso-classical", "iso-nonclassical"};
const std::set<std::string> kLorentzFamilies{"lorentz-classical", "lorentz-nonclassical"};

const json& require(const json& j, const std::string& field)
{
    if (!j.contains(field))
        throw SpecError(field, "missing");
    return j.at(field);
}

int int_field(const json& j, const std::string& field)
{
    const json& v = require(j, field);
    if (!v.is_number_integer())
        throw SpecError(field, "expected an integer");
    return v.get<int>();
}

QParam q_field(const json& j)
{
    const json& v = require(j, "q");
    if (!v.is_number())
        throw SpecError("q", "expected a number");
    try {
        return QParam(v.get<double>());
    } catch (const Error& e) {
        throw SpecError("q", e.what());
    }
}

std::vector<HalfInt> half_list(const json& j, const std::string& field)
{
    if (!j.contains(field))
        return {};
    const json& v = j.at(field);
    if (!v.is_array())
        throw SpecError(field, "expected an array");
    std::vector<HalfInt> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(half_int_from_json(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<int> sign_list(const json& j, const std::string& field)
{
    if (!j.contains(field))
        return {};
    const json& v = j.at(field);
    if (!v.is_array())
        throw SpecError(field, "expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer() || (v[i].get<int>() != 1 && v[i].get<int>() != -1))
            throw SpecError(field + "[" + std::to_string(i) + "]", "expected +1 or -1");
        out.push_back(v[i].get<int>());
    }
    return out;
}

void check_keys(const json& j, const std::set<std::string>& allowed)
{
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key))
            throw SpecError(key, "unknown field");
    }
}

void check_sign_count(const std::vector<int>& eps, std::size_t expected, const std::string& field)
{
    if (eps.size() != expected)
        throw SpecError(field, "expected " + std::to_string(expected) + " signs");
}

int depth_field(const json& j)
{
    if (!j.contains("depth"))
        return kDefaultDepth;
    const int d = int_field(j, "depth");
    if (d < 0)
        throw SpecError("depth", "must be nonnegative");
    return d;
}

} // namespace

RunSpec parse_spec(const json& j)
{
    if (!j.is_object())
        throw SpecError("spec", "expected a JSON object");
    const json& fam = require(j, "family");
    if (!fam.is_string())
        throw SpecError("family", "expected a string");
    const std::string family = fam.get<std::string>();
    std::vector<int> split;
    bool auto_variant = false;
    const int n = int_field(j, "n");
    if (n < 2)
        throw SpecError("n", "must be at least 2");

    if (kSoFamilies.count(family)) {
        check_keys(j, {"family", "n", "q", "weight", "eps", "split"});
        if (n < 3)
            throw SpecError("n", "must be at least 3");
        const bool nc = family == "so-nonclassical" || family == "so-onedim";
        SoRepSpec spec{HighestWeight{n, nc ? Kind::nonclassical : Kind::classical, {}}, q_field(j), SoFamily::classical, {}};
        if (family == "so-onedim" && !j.contains("weight"))
            spec.weight.entries.assign(static_cast<std::size_t>(row_length(n)), HalfInt::half());
        else
            spec.weight.entries = half_list(j, "weight");
        if (!j.contains("weight") && family != "so-onedim")
            throw SpecError("weight", "missing");
        if (!validate_weight(spec.weight))
            throw SpecError("weight", "invalid highest weight");
        if (family == "so-tprime" && spec.weight.entries.front().is_integral())
            throw SpecError("weight", "tprime weight must be half-integral");
        spec.eps = sign_list(j, "eps");
        if (family == "so-classical") {
            spec.family = SoFamily::classical;
            if (!spec.eps.empty())
                throw SpecError("eps", "not used by so-classical");
        } else {
            spec.family = family == "so-nonclassical" ? SoFamily::nonclassical
                        : family == "so-tprime"       ? SoFamily::tprime
                                                          : SoFamily::onedim;
            check_sign_count(spec.eps, static_cast<std::size_t>(n - 1), "eps");
        }
        split = sign_list(j, "split");
        if (!split.empty()) {
            if (spec.family != SoFamily::tprime)
                throw SpecError("split", "only used by so-tprime");
            check_sign_count(split, static_cast<std::size_t>((n - 1) / 2), "split");
        }
        return RunSpec{family, spec, split, auto_variant};
    }

    const bool iso = kIsoFamilies.count(family) > 0;
    if (!iso && !kLorentzFamilies.count(family))
        throw SpecError("family", "unknown family \"" + family + "\"");
    const Kind kind = family.ends_with("nonclassical") ? Kind::nonclassical : Kind::classical;
    const auto m = half_list(j, "m");
    try {
        validate_labels(n, m, kind);
    } catch (const Error& e) {
        throw SpecError("m", e.what());
    }
    const auto eps = sign_list(j, "eps");
    if (kind == Kind::nonclassical)
        check_sign_count(eps, static_cast<std::size_t>(n), "eps");
    else if (!eps.empty())
        throw SpecError("eps", "not used by classical families");
    const HalfInt cutoff = half_int_from_json(require(j, "cutoff"), "cutoff");
    if (cutoff < truncation_base(n, m, kind) + 3)
        throw SpecError("cutoff", "cutoff too small");
    const bool integral = m.empty() ? kind == Kind::classical : m.front().is_integral();
    if (cutoff.is_integral() != integral)
        throw SpecError("cutoff", "parity does not match the labels");
    const int depth = depth_field(j);

    if (iso) {
        check_keys(j, {"family", "n", "q", "m", "eps", "lambda", "cutoff", "depth"});
        const cplx lambda = complex_from_json(require(j, "lambda"), "lambda");
        if (lambda == cplx(0.0))
            throw SpecError("lambda", "must be nonzero");
        return RunSpec{family, IsoRepSpec{n, kind, lambda, m, eps, q_field(j), cutoff, depth}, split, auto_variant};
    }
    check_keys(j, {"family", "n", "q", "m", "eps", "c", "cutoff", "depth", "variant"});
    const json& cj = require(j, "c");
    const CParam c = cj.is_string() ? CParam::from_half_int(half_int_from_json(cj, "c"))
                                    : CParam::from_complex(complex_from_json(cj, "c"));
    LorentzVariant variant = LorentzVariant::consistent;
    auto_variant = true;
    if (j.contains("variant")) {
        if (!j.at("variant").is_string())
            throw SpecError("variant", "expected a string");
        const auto name = j.at("variant").get<std::string>();
        if (name != "auto") {
            try {
                variant = parse_variant(name);
            } catch (const Error& e) {
                throw SpecError("variant", e.what());
            }
            auto_variant = false;
        }
    }
    return RunSpec{family, LorentzRepSpec{n, kind, c, m, eps, q_field(j), cutoff, variant, depth}, split, auto_variant};
}

json spec_to_json(const RunSpec& s)
{
    json out{{"family", s.family}};
    if (const auto* so = std::get_if<SoRepSpec>(&s.rep)) {
        out["n"] = so->weight.n;
        out["q"] = so->q.value();
        out["weight"] = to_json(so->weight.entries);
        if (!so->eps.empty())
            out["eps"] = so->eps;
        if (!s.split.empty())
            out["split"] = s.split;
    } else if (const auto* iso = std::get_if<IsoRepSpec>(&s.rep)) {
        out["n"] = iso->n;
        out["q"] = iso->q.value();
        out["m"] = to_json(iso->m);
        if (!iso->eps.empty())
            out["eps"] = iso->eps;
        out["lambda"] = to_json(iso->lambda);
        out["cutoff"] = to_json(iso->cutoff);
        out["depth"] = iso->depth;
    } else {
        const auto& lor = std::get<LorentzRepSpec>(s.rep);
        out["n"] = lor.n;
        out["q"] = lor.q.value();
        out["m"] = to_json(lor.m);
        if (!lor.eps.empty())
            out["eps"] = lor.eps;
        out["c"] = lor.c.exact ? to_json(*lor.c.exact) : to_json(lor.c.value);
        out["cutoff"] = to_json(lor.cutoff);
        out["depth"] = lor.depth;
        out["variant"] = s.auto_variant ? "auto" : to_string(lor.variant);
    }
    return out;
}

const QParam& q_of(const RunSpec& s)
{
    return std::visit([](const auto& spec) -> const QParam& { return spec.q; }, s.rep);
}

int depth_of(const RunSpec& s)
{
    if (const auto* iso = std::get_if<IsoRepSpec>(&s.rep))
        return iso->depth;
    if (const auto* lor = std::get_if<LorentzRepSpec>(&s.rep))
        return lor->depth;
    return 0;
}

GeneratorSet build(const RunSpec& s)
{
    if (const auto* so = std::get_if<SoRepSpec>(&s.rep)) {
        GeneratorSet gs = build_so(*so);
        return s.split.empty() ? gs : split_tprime(gs, s.split);
    }
    if (const auto* iso = std::get_if<IsoRepSpec>(&s.rep))
        return build_iso(*iso);
    LorentzRepSpec lor = std::get<LorentzRepSpec>(s.rep);
    if (s.auto_variant)
        lor.variant = select_variant(lor, Tolerances{}.residual).chosen;
    return build_lorentz(lor);
}

std::string format_double(double v)
{
    if (v == 0.0)
        v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_matrix_market(std::ostream& os, const SparseMatrix& m)
{
    os << "%%MatrixMarket matrix coordinate complex general\n";
    os << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            os << it.row() + 1 << ' ' << col + 1 << ' ' << format_double(it.value().real()) << ' '
               << format_double(it.value().imag()) << '\n';
        }
    }
}

SparseMatrix read_matrix_market(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line.rfind("%%MatrixMarket matrix coordinate complex general", 0) != 0)
        throw Error("not a complex coordinate Matrix Market file");
    while (std::getline(is, line) && !line.empty() && line[0] == '%') {
    }
    std::istringstream header(line);
    Eigen::Index rows = 0, cols = 0, nnz = 0;
    if (!(header >> rows >> cols >> nnz))
        throw Error("malformed Matrix Market size line");
    std::vector<Eigen::Triplet<cplx>> t;
    for (Eigen::Index k = 0; k < nnz; ++k) {
        Eigen::Index r = 0, c = 0;
        double re = 0.0, im = 0.0;
        if (!(is >> r >> c >> re >> im) || r < 1 || c < 1 || r > rows || c > cols)
            throw Error("malformed Matrix Market entry");
        t.emplace_back(static_cast<int>(r - 1), static_cast<int>(c - 1), cplx(re, im));
    }
    SparseMatrix m(rows, cols);
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

std::string file_stem(const std::string& generator_name)
{
    std::string out;
    for (char ch : generator_name) {
        if (ch == '{' || ch == '}')
            continue;
        out.push_back(ch == ',' ? '_' : ch);
    }
    return out;
}

} // namespace qrep
