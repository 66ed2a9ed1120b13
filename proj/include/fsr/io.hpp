#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "fsr/counterexample.hpp"
#include "fsr/cyclo.hpp"
#include "fsr/multiset.hpp"
#include "fsr/ofs.hpp"
#include "fsr/radon.hpp"
#include "fsr/search.hpp"

// JSON encodings of every value the CLI reads or writes. Writers emit keys in a
// fixed order and entries sorted, so equal values always serialize identically.
// Readers throw StructuralError on malformed input.
namespace fsr::io {

using Json = nlohmann::ordered_json;

/// Compact one-line dump.
std::string dump(const Json& j);
Json parse(const std::string& text);
Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& j);

/// "p/q" with q >= 1, always including the denominator.
std::string rational_to_string(const mpq_class& q);
/// Accepts "p/q" or "p".
mpq_class rational_from_string(const std::string& s);

Json to_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j);

Json to_json(const GroupElement& x);
GroupElement element_from_json(const Json& j, const GroupSpec& g);

/// {"group":{"moduli":[...]},"elements":[[[coords],mult],...]}
Json to_json(const Multiset& a);
Multiset multiset_from_json(const Json& j);

/// {"n":…,"d":…,"values":[[[coords],"num/den"],...]}
Json to_json(const radon::FunctionTable& f);
radon::FunctionTable function_table_from_json(const Json& j);

/// {"n":…,"d":…,"entries":[[[coeffs],c,"num/den"],...]}
Json to_json(const radon::RadonImage& rf);
radon::RadonImage radon_image_from_json(const Json& j);

/// {"n":…,"d":…,"weights":[[[coeffs],"num/den"],...]}
Json to_json(const radon::InvertingFunction& lambda);
radon::InvertingFunction inverting_function_from_json(const Json& j);

Json to_json(const ofs::Verdict& v);
ofs::Verdict verdict_from_json(const Json& j);

Json to_json(const Sim0Result& r, bool sim);
Sim0Result sim0_result_from_json(const Json& j, const GroupSpec& g);

Json to_json(const counterexample::CounterexamplePair& p, counterexample::ExponentMode mode);
counterexample::CounterexamplePair counterexample_from_json(const Json& j);

Json to_json(const search::ScanReport& r);
search::ScanReport scan_report_from_json(const Json& j);

/// {"group":…,"classes":[[multiset,...],...]}
Json preimages_to_json(const GroupSpec& g, const std::vector<std::vector<Multiset>>& classes);
std::vector<std::vector<Multiset>> preimages_from_json(const Json& j);

Json to_json(const cyclo::ExponentVector& x);
cyclo::ExponentVector exponent_vector_from_json(const Json& j);

}  // namespace fsr::io
