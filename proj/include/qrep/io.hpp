#pragma once

#include "qrep/rep_iso.hpp"
#include "qrep/rep_lorentz.hpp"
#include "qrep/rep_so.hpp"
#include "qrep/verify.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <variant>

namespace qrep {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

/// Any representation the library can build.
using RepSpec = std::variant<SoRepSpec, IsoRepSpec, LorentzRepSpec>;

/// A representation request as read from JSON.
struct RunSpec {
    /// One of so-classical, so-nonclassical, so-tprime, so-onedim, iso-classical,
    /// iso-nonclassical, lorentz-classical, lorentz-nonclassical.
    std::string family;
    RepSpec rep;
    /// so-tprime only: restrict to the joint eigenspace with these signs.
    std::vector<int> split;
    /// lorentz only: choose the variant by the relation residuals.
    bool auto_variant = false;
};

/// Errors that point at one field of the input.
class SpecError : public Error {
public:
    SpecError(const std::string& field, const std::string& message)
        : Error("field '" + field + "': " + message), field_(field)
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

json to_json(HalfInt h);
HalfInt half_int_from_json(const json& j, const std::string& field);
json to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& field);
json to_json(const std::vector<HalfInt>& v);
json to_json(const GTPattern& p);
json to_json(const HomResult& h);
json to_json(const VerificationReport& r);
json to_json(const IrreducibilityVerdict& v);
json to_json(const ProbeResult& p);

RunSpec parse_spec(const json& j);
/// Normalized form; parse_spec(spec_to_json(s)) reproduces s.
json spec_to_json(const RunSpec& s);

const QParam& q_of(const RunSpec& s);
/// Interior depth for truncated families, 0 otherwise.
int depth_of(const RunSpec& s);

/// Builds the representation; applies the split for so-tprime when requested.
GeneratorSet build(const RunSpec& s);

/// "%.17g".
std::string format_double(double v);

void write_matrix_market(std::ostream& os, const SparseMatrix& m);
SparseMatrix read_matrix_market(std::istream& is);

/// "I_{3,2}" becomes "I_3_2".
std::string file_stem(const std::string& generator_name);

} // namespace qrep
