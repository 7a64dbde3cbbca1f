#include "qrep/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace qrep;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

constexpr const char* kOutEnv = "QREP_OUT_DIR";
constexpr const char* kDefaultOut = "qrep-out";

// Default parameters of the truncated model behind `irreducible`.
constexpr double kProbeQ = 1.5;

struct Options {
    std::string spec;
    std::string spec2;
    std::string artifacts;
    std::string generator;
    std::optional<double> q;
    std::optional<std::string> cutoff;
    std::optional<int> depth;
    std::optional<std::string> variant;
    std::optional<double> tol;
    std::string out;
};

json load_json(const std::string& text, const std::string& field)
{
    std::string body = text;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
        std::ifstream in(text);
        if (!in)
            throw SpecError(field, "cannot open \"" + text + "\"");
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw SpecError(field, std::string("malformed JSON: ") + e.what());
    }
}

// Flags override the corresponding fields of the input JSON before it is validated.
json apply_overrides(json j, const Options& o)
{
    if (!j.is_object())
        throw SpecError("spec", "expected a JSON object");
    if (o.q)
        j["q"] = *o.q;
    if (o.cutoff)
        j["cutoff"] = *o.cutoff;
    if (o.depth)
        j["depth"] = *o.depth;
    if (o.variant)
        j["variant"] = *o.variant;
    return j;
}

RunSpec load_spec(const std::string& text, const Options& o, const std::string& field)
{
    if (text.empty())
        throw SpecError(field, "missing");
    return parse_spec(apply_overrides(load_json(text, field), o));
}

Tolerances tolerances(const Options& o)
{
    Tolerances t;
    if (o.tol)
        t.residual = *o.tol;
    return t;
}

json tolerances_json(const Tolerances& t)
{
    return json{{"residual", t.residual}, {"rank", t.rank}};
}

struct Built {
    GeneratorSet gs;
    json decisions = json::object();
};

Built build_recorded(const RunSpec& s, const Tolerances& tol)
{
    Built b;
    const auto* lor = std::get_if<LorentzRepSpec>(&s.rep);
    if (!lor) {
        b.gs = build(s);
        return b;
    }
    LorentzRepSpec spec = *lor;
    json residuals = json::object();
    if (s.auto_variant) {
        const VariantSelection sel = select_variant(spec, tol.residual);
        spec.variant = sel.chosen;
        for (const auto& [v, r] : sel.residuals)
            residuals[to_string(v)] = r;
        b.decisions["variant_selection"] = "auto";
        b.decisions["variant_passed"] = sel.any_pass;
    } else {
        b.decisions["variant_selection"] = "fixed";
    }
    b.decisions["variant"] = to_string(spec.variant);
    if (!residuals.empty())
        b.decisions["variant_residuals"] = residuals;
    b.gs = build_lorentz(spec);
    return b;
}

std::string mask_string(const std::vector<bool>& mask)
{
    std::string s;
    s.reserve(mask.size());
    for (bool b : mask)
        s.push_back(b ? '1' : '0');
    return s;
}

std::vector<bool> parse_mask(const std::string& s, std::size_t dim)
{
    if (s.size() != dim)
        throw SpecError("interior", "length does not match dim");
    std::vector<bool> mask;
    for (char ch : s) {
        if (ch != '0' && ch != '1')
            throw SpecError("interior", "expected a string of 0 and 1");
        mask.push_back(ch == '1');
    }
    return mask;
}

json run_header(const std::string& command, const RunSpec& s, const Tolerances& tol, const json& decisions)
{
    json m;
    m["tool"] = "qrep";
    m["version"] = kVersion;
    m["command"] = command;
    m["inputs"] = spec_to_json(s);
    m["tolerances"] = tolerances_json(tol);
    m["decisions"] = decisions;
    return m;
}

std::optional<fs::path> report_dir(const Options& o)
{
    if (!o.out.empty())
        return fs::path(o.out);
    if (const char* env = std::getenv(kOutEnv); env && *env)
        return fs::path(env);
    return std::nullopt;
}

fs::path build_dir(const Options& o)
{
    return report_dir(o).value_or(fs::path(kDefaultOut));
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write \"" + path.string() + "\"");
    out << text;
}

// Prints the report and, when an output directory is configured, stores it as <command>.json.
void emit(const std::string& command, const json& report, const Options& o)
{
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (const auto dir = report_dir(o)) {
        fs::create_directories(*dir);
        write_text(*dir / (command + ".json"), text);
    }
}

Kind kind_field(const json& j)
{
    std::string name;
    if (j.contains("kind") && j.at("kind").is_string())
        name = j.at("kind").get<std::string>();
    else if (j.contains("family") && j.at("family").is_string())
        name = j.at("family").get<std::string>();
    else
        throw SpecError("kind", "missing");
    if (name == "classical" || name.ends_with("-classical") || name == "so-tprime")
        return Kind::classical;
    if (name == "nonclassical" || name.ends_with("-nonclassical") || name == "so-onedim")
        return Kind::nonclassical;
    throw SpecError("kind", "unknown kind \"" + name + "\"");
}

int n_field(const json& j)
{
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw SpecError("n", "expected an integer");
    return j.at("n").get<int>();
}

std::vector<HalfInt> halves_field(const json& j, const std::string& field)
{
    std::vector<HalfInt> out;
    if (!j.contains(field))
        return out;
    if (!j.at(field).is_array())
        throw SpecError(field, "expected an array");
    for (std::size_t i = 0; i < j.at(field).size(); ++i)
        out.push_back(half_int_from_json(j.at(field)[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

int cmd_patterns(const Options& o)
{
    const json j = load_json(o.spec, "spec");
    const HighestWeight w{n_field(j), kind_field(j), halves_field(j, "weight")};
    if (!validate_weight(w))
        throw SpecError("weight", "invalid highest weight");
    const Basis basis = enumerate_basis(w);
    json patterns = json::array();
    for (const GTPattern& p : basis.patterns())
        patterns.push_back(to_json(p));
    json report;
    report["weight"] = to_json(w.entries);
    report["kind"] = to_string(w.kind);
    report["dim"] = basis.dim();
    report["patterns"] = patterns;
    report["manifest"] = json{{"tool", "qrep"}, {"version", kVersion}, {"command", "patterns"}, {"inputs", j}};
    emit("patterns", report, o);
    return kExitPass;
}

int cmd_branch(const Options& o)
{
    json j = load_json(o.spec, "spec");
    if (o.cutoff)
        j["cutoff"] = *o.cutoff;
    const int n = n_field(j);
    const Kind kind = kind_field(j);
    const auto m = halves_field(j, "m");
    if (!j.contains("cutoff"))
        throw SpecError("cutoff", "missing");
    const HalfInt cutoff = half_int_from_json(j.at("cutoff"), "cutoff");
    std::vector<HighestWeight> weights;
    try {
        weights = branch(n, m, kind, cutoff);
    } catch (const Error& e) {
        throw SpecError("m", e.what());
    }
    json list = json::array();
    for (const HighestWeight& w : weights)
        list.push_back(to_json(w.entries));
    json report;
    report["n"] = n;
    report["kind"] = to_string(kind);
    report["m"] = to_json(m);
    report["cutoff"] = to_json(cutoff);
    report["weights"] = list;
    report["manifest"] = json{{"tool", "qrep"}, {"version", kVersion}, {"command", "branch"}, {"inputs", j}};
    emit("branch", report, o);
    return kExitPass;
}

int cmd_build(const Options& o)
{
    const RunSpec s = load_spec(o.spec, o, "spec");
    const Tolerances tol = tolerances(o);
    const Built b = build_recorded(s, tol);
    const fs::path dir = build_dir(o);
    fs::create_directories(dir);

    json files = json::object();
    for (std::size_t g = 0; g < b.gs.names.size(); ++g) {
        const std::string file = file_stem(b.gs.names[g]) + ".mtx";
        std::ostringstream os;
        write_matrix_market(os, b.gs.mats[g]);
        write_text(dir / file, os.str());
        files[b.gs.names[g]] = file;
    }
    json manifest = run_header("build", s, tol, b.decisions);
    const json inputs = manifest["inputs"];
    manifest["family"] = s.family;
    if (const auto* so = std::get_if<SoRepSpec>(&s.rep))
        manifest["weight"] = to_json(so->weight.entries);
    else
        manifest["m"] = inputs["m"];
    manifest["eps"] = inputs.contains("eps") ? inputs["eps"] : json::array();
    manifest["q"] = q_of(s).value();
    manifest["dim"] = b.gs.dim();
    if (b.gs.truncated()) {
        manifest["cutoff"] = inputs["cutoff"];
        manifest["depth"] = depth_of(s);
    }
    manifest["generators"] = files;
    manifest["interior"] = mask_string(b.gs.interior);
    const std::string text = manifest.dump(2) + "\n";
    write_text(dir / "manifest.json", text);
    std::cout << text;
    return kExitPass;
}

// Generator set and its inputs as stored by `build`.
struct Loaded {
    RunSpec spec;
    GeneratorSet gs;
    Tolerances tol;
};

Loaded load_artifacts(const Options& o)
{
    const fs::path dir(o.artifacts);
    const json manifest = load_json((dir / "manifest.json").string(), "artifacts");
    if (!manifest.contains("inputs") || !manifest.contains("generators") || !manifest.contains("dim"))
        throw SpecError("artifacts", "manifest lacks inputs, generators or dim");
    Loaded l{parse_spec(apply_overrides(manifest.at("inputs"), o)), {}, Tolerances{}};
    if (manifest.contains("tolerances"))
        l.tol.residual = manifest.at("tolerances").value("residual", l.tol.residual);
    if (o.tol)
        l.tol.residual = *o.tol;
    const auto dim = manifest.at("dim").get<std::size_t>();
    for (const auto& [name, file] : manifest.at("generators").items()) {
        std::ifstream in(dir / file.get<std::string>());
        if (!in)
            throw SpecError("generators", "cannot open \"" + file.get<std::string>() + "\"");
        SparseMatrix m = read_matrix_market(in);
        if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim)
            throw SpecError("generators", "matrix " + name + " does not match dim");
        l.gs.names.push_back(name);
        l.gs.mats.push_back(std::move(m));
    }
    l.gs.patterns.assign(dim, GTPattern{});
    l.gs.interior = manifest.contains("interior") ? parse_mask(manifest.at("interior").get<std::string>(), dim)
                                                  : std::vector<bool>(dim, true);
    return l;
}

int cmd_verify(const Options& o)
{
    if (o.spec.empty() == o.artifacts.empty())
        throw SpecError("spec", "give exactly one of --spec and --artifacts");
    json decisions = json::object();
    auto load = [&]() {
        if (!o.artifacts.empty()) {
            decisions["source"] = "artifacts";
            return load_artifacts(o);
        }
        const RunSpec s = load_spec(o.spec, o, "spec");
        const Tolerances tol = tolerances(o);
        Built b = build_recorded(s, tol);
        decisions = b.decisions;
        return Loaded{s, std::move(b.gs), tol};
    };
    const Loaded l = load();
    const VerificationReport report = verify_relations(l.gs, q_of(l.spec), l.tol, depth_of(l.spec));
    json out = to_json(report);
    out["dim"] = l.gs.dim();
    out["manifest"] = run_header("verify", l.spec, l.tol, decisions);
    emit("verify", out, o);
    return report.pass ? kExitPass : kExitFail;
}

// Irreducible finite-dimensional families, for which Schur's lemma fixes the expected dimensions.
bool irreducible_so(const RunSpec& s)
{
    const auto* so = std::get_if<SoRepSpec>(&s.rep);
    return so && (so->family != SoFamily::tprime || !s.split.empty());
}

int cmd_commutant(const Options& o)
{
    const RunSpec s = load_spec(o.spec, o, "spec");
    const Tolerances tol = tolerances(o);
    const Built b = build_recorded(s, tol);
    VerificationReport report;
    report.tol = tol;
    report.depth = depth_of(s);
    report.evidence_only = b.gs.truncated();
    report.commutant = commutant(b.gs, tol.rank);
    if (irreducible_so(s))
        report.expected_commutant = 1;
    report.finalize();
    json out = to_json(report);
    out["dim"] = b.gs.dim();
    out["manifest"] = run_header("commutant", s, tol, b.decisions);
    emit("commutant", out, o);
    return report.pass ? kExitPass : kExitFail;
}

int cmd_intertwine(const Options& o)
{
    const RunSpec a = load_spec(o.spec, o, "spec");
    const RunSpec b = load_spec(o.spec2, o, "spec2");
    const Tolerances tol = tolerances(o);
    const Built ba = build_recorded(a, tol);
    const Built bb = build_recorded(b, tol);
    if (ba.gs.names != bb.gs.names)
        throw SpecError("spec2", "generators differ from those of spec");
    VerificationReport report;
    report.tol = tol;
    report.depth = depth_of(a);
    report.evidence_only = ba.gs.truncated() || bb.gs.truncated();
    const std::vector<bool> mask = ba.gs.truncated() ? ba.gs.interior : std::vector<bool>{};
    report.intertwiner = intertwiner(ba.gs, bb.gs, mask, tol.rank);
    if (irreducible_so(a) && irreducible_so(b) && q_of(a).value() == q_of(b).value())
        report.expected_intertwiner = spec_to_json(a) == spec_to_json(b) ? 1 : 0;
    report.finalize();
    json out = to_json(report);
    out["dims"] = json::array({ba.gs.dim(), bb.gs.dim()});
    json manifest = run_header("intertwine", a, tol, ba.decisions);
    manifest["inputs2"] = spec_to_json(b);
    manifest["decisions2"] = bb.decisions;
    out["manifest"] = manifest;
    emit("intertwine", out, o);
    return report.pass ? kExitPass : kExitFail;
}

int cmd_spectrum(const Options& o)
{
    const RunSpec s = load_spec(o.spec, o, "spec");
    const Tolerances tol = tolerances(o);
    const Built b = build_recorded(s, tol);
    if (!b.gs.has(o.generator))
        throw SpecError("generator", "no generator named \"" + o.generator + "\"");
    json values = json::array();
    for (cplx v : spectrum(b.gs.get(o.generator)))
        values.push_back(to_json(v));
    json out;
    out["generator"] = o.generator;
    out["dim"] = b.gs.dim();
    out["evidence_only"] = b.gs.truncated();
    out["eigenvalues"] = values;
    out["manifest"] = run_header("spectrum", s, tol, b.decisions);
    emit("spectrum", out, o);
    return kExitPass;
}

// Smallest cutoff of the right parity that leaves `depth` raisings of room above both the branch
// base and |Re c|.
HalfInt probe_cutoff(int n, const std::vector<HalfInt>& m, Kind kind, cplx c, int depth)
{
    const HalfInt base = truncation_base(n, m, kind);
    HalfInt cutoff = base + (depth + 3);
    const double need = std::abs(c.real()) + depth + 3;
    while (cutoff.to_double() < need)
        cutoff = cutoff + 1;
    return cutoff;
}

int cmd_irreducible(const Options& o)
{
    json j = load_json(o.spec, "spec");
    const int n = n_field(j);
    const Kind kind = kind_field(j);
    if (!j.contains("family") || !j.at("family").is_string() || !j.at("family").get<std::string>().starts_with("lorentz-"))
        throw SpecError("family", "expected lorentz-classical or lorentz-nonclassical");
    const auto m = halves_field(j, "m");
    if (!j.contains("c"))
        throw SpecError("c", "missing");
    const json& cj = j.at("c");
    const CParam c = cj.is_string() ? CParam::from_half_int(half_int_from_json(cj, "c"))
                                    : CParam::from_complex(complex_from_json(cj, "c"));
    IrreducibilityVerdict verdict;
    try {
        verdict = kind == Kind::classical ? irreducible_classical(c, m, n) : irreducible_nonclassical(c, m, n);
    } catch (const Error& e) {
        throw SpecError("m", e.what());
    }

    // The probe runs on a truncated build; fill in whatever the verdict input leaves open.
    json probe_in = j;
    if (!probe_in.contains("q"))
        probe_in["q"] = kProbeQ;
    if (kind == Kind::nonclassical && !probe_in.contains("eps"))
        probe_in["eps"] = std::vector<int>(static_cast<std::size_t>(n), 1);
    if (!probe_in.contains("cutoff") && !o.cutoff)
        probe_in["cutoff"] = to_json(probe_cutoff(n, m, kind, c.value, o.depth.value_or(kDefaultDepth)));
    if (!probe_in.contains("variant") && !o.variant)
        probe_in["variant"] = "consistent";
    const RunSpec s = parse_spec(apply_overrides(probe_in, o));
    const ProbeResult probe = probe_reducibility(std::get<LorentzRepSpec>(s.rep));
    const bool agree = verdict.irreducible != probe.reducible;

    json out;
    out["verdict"] = to_json(verdict);
    out["probe"] = to_json(probe);
    out["agree"] = agree;
    json manifest = run_header("irreducible", s, tolerances(o), json::object());
    manifest["verdict_inputs"] = j;
    out["manifest"] = manifest;
    emit("irreducible", out, o);
    return agree ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generator matrices and verification for U'_q(so_n), U_q(iso_n) and U'_q(so_{n,1}) on "
                 "Gel'fand-Tsetlin bases.\n"
                 "Exit codes: 0 pass, 1 verification failure, 2 usage or input error.\n"
                 "Reports go to stdout and, with --out or $QREP_OUT_DIR, to <dir>/<command>.json.",
                 "qrep"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Options o;

    auto add_spec = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--spec", o.spec, "JSON spec: a file path or an inline object");
        if (required)
            opt->required();
        cmd->add_option("--out", o.out, "Output directory (default $QREP_OUT_DIR, for build then ./qrep-out)");
    };
    auto add_overrides = [&](CLI::App* cmd) {
        cmd->add_option("--q", o.q, "Override q");
        cmd->add_option("--cutoff", o.cutoff, "Override the cutoff on m_{1,n} (\"k\" or \"k/2\")");
        cmd->add_option("--depth", o.depth, "Override the interior depth (default 3)");
        cmd->add_option("--variant", o.variant, "Lorentz top-generator variant: auto, consistent, literal, uniform");
        cmd->add_option("--tol", o.tol, "Relation residual tolerance (default 1e-9)");
    };

    auto* patterns = app.add_subcommand("patterns", "Enumerate tableaux of {n, kind|family, weight}");
    add_spec(patterns, true);
    auto* branch_cmd = app.add_subcommand("branch", "Components of {n, kind|family, m, cutoff} up to the cutoff");
    add_spec(branch_cmd, true);
    branch_cmd->add_option("--cutoff", o.cutoff, "Override the cutoff");
    auto* build_cmd = app.add_subcommand("build", "Write Matrix Market generators and manifest.json");
    add_spec(build_cmd, true);
    add_overrides(build_cmd);
    auto* verify = app.add_subcommand("verify", "Relation residuals of a spec or of built artifacts");
    add_spec(verify, false);
    verify->add_option("--artifacts", o.artifacts, "Directory written by build");
    add_overrides(verify);
    auto* comm = app.add_subcommand("commutant", "Dimension of the commutant");
    add_spec(comm, true);
    add_overrides(comm);
    auto* inter = app.add_subcommand("intertwine", "Dimension of the intertwiner space from --spec to --spec2");
    add_spec(inter, true);
    inter->add_option("--spec2", o.spec2, "Second JSON spec")->required();
    add_overrides(inter);
    auto* spec_cmd = app.add_subcommand("spectrum", "Eigenvalues of one generator");
    add_spec(spec_cmd, true);
    spec_cmd->add_option("--generator", o.generator, "Generator name such as I_{3,2}")->required();
    add_overrides(spec_cmd);
    auto* irr = app.add_subcommand("irreducible", "Irreducibility predicate for {family, n, c, m} with a probe");
    add_spec(irr, true);
    add_overrides(irr);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*patterns)
            return cmd_patterns(o);
        if (*branch_cmd)
            return cmd_branch(o);
        if (*build_cmd)
            return cmd_build(o);
        if (*verify)
            return cmd_verify(o);
        if (*comm)
            return cmd_commutant(o);
        if (*inter)
            return cmd_intertwine(o);
        if (*spec_cmd)
            return cmd_spectrum(o);
        return cmd_irreducible(o);
    } catch (const Error& e) {
        std::cerr << "qrep: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "qrep: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "qrep: " << e.what() << "\n";
        return kExitUsage;
    }
}
