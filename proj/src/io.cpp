#include "fsr/io.hpp"

#include <fstream>
#include <sstream>

#include "fsr/error.hpp"

namespace fsr::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw StructuralError(std::string("expected a JSON object with key \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw StructuralError(std::string("missing key \"") + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw StructuralError(std::string("key \"") + key + "\" must be an array");
  return v;
}

std::int64_t as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw StructuralError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::uint64_t as_uint(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  std::int64_t v = as_int(j, what);
  if (v < 0) throw StructuralError(std::string(what) + " must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

bool as_bool(const Json& j, const char* what) {
  if (!j.is_boolean()) throw StructuralError(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<std::uint64_t> optional_uint(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return as_uint(*it, key);
}

std::optional<std::int64_t> optional_int(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return as_int(*it, key);
}

Json mpz_json(const mpz_class& m) {
  if (m.fits_ulong_p() && sizeof(unsigned long) == sizeof(std::uint64_t)) return Json(static_cast<std::uint64_t>(m.get_ui()));
  return Json(m.get_str());
}

mpz_class mpz_from_json(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    mpz_class m;
    if (m.set_str(j.get<std::string>(), 10) != 0) throw StructuralError(std::string(what) + ": bad integer string");
    return m;
  }
  throw StructuralError(std::string(what) + " must be an integer or a decimal string");
}

std::vector<std::uint64_t> uint_vector(const Json& j, std::size_t expected, std::uint64_t n, const char* what) {
  if (!j.is_array() || j.size() != expected) {
    throw StructuralError(std::string(what) + " must be an array of length " + std::to_string(expected));
  }
  std::vector<std::uint64_t> out;
  out.reserve(expected);
  for (const auto& v : j) {
    std::uint64_t x = as_uint(v, what);
    if (x >= n) throw StructuralError(std::string(what) + ": coordinate out of range");
    out.push_back(x);
  }
  return out;
}

Json uint_array(const std::vector<std::uint64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

std::uint64_t checked_nd(const Json& j, std::size_t& d) {
  std::uint64_t n = as_uint(field(j, "n"), "n");
  d = static_cast<std::size_t>(as_uint(field(j, "d"), "d"));
  radon::point_count(n, d);
  return n;
}

// Shared reader for tables indexed by a single coordinate vector.
std::vector<mpq_class> read_indexed(const Json& rows, std::uint64_t n, std::size_t d, const char* what) {
  std::uint64_t size = radon::point_count(n, d);
  std::vector<mpq_class> out(size);
  std::vector<bool> seen(size, false);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 2) throw StructuralError(std::string(what) + ": each row must be [coords, value]");
    auto coords = uint_vector(row[0], d, n, what);
    std::uint64_t idx = radon::index_of(coords, n);
    if (seen[idx]) throw StructuralError(std::string(what) + ": duplicate row");
    seen[idx] = true;
    if (!row[1].is_string()) throw StructuralError(std::string(what) + ": value must be a \"p/q\" string");
    out[idx] = rational_from_string(row[1].get<std::string>());
  }
  return out;
}

Json write_indexed(const std::vector<mpq_class>& values, std::uint64_t n, std::size_t d) {
  Json rows = Json::array();
  for (std::uint64_t i = 0; i < values.size(); ++i) {
    rows.push_back(Json::array({uint_array(radon::coords_of(i, n, d)), rational_to_string(values[i])}));
  }
  return rows;
}

}  // namespace

std::string dump(const Json& j) { return j.dump(); }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructuralError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot write " + path.string());
  out << j.dump() << '\n';
}

std::string rational_to_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  mpz_class num, den = 1;
  if (num.set_str(s.substr(0, slash), 10) != 0) throw StructuralError("bad rational \"" + s + "\"");
  if (slash != std::string::npos && den.set_str(s.substr(slash + 1), 10) != 0) {
    throw StructuralError("bad rational \"" + s + "\"");
  }
  if (den == 0) throw StructuralError("zero denominator in \"" + s + "\"");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

Json to_json(const GroupSpec& g) {
  Json j = Json::object();
  j["moduli"] = g.moduli();
  return j;
}

GroupSpec group_from_json(const Json& j) {
  const Json& m = array_field(j, "moduli");
  std::vector<std::int64_t> moduli;
  for (const auto& v : m) moduli.push_back(as_int(v, "modulus"));
  return GroupSpec(std::move(moduli));
}

Json to_json(const GroupElement& x) { return Json(x.coords); }

GroupElement element_from_json(const Json& j, const GroupSpec& g) {
  if (!j.is_array()) throw StructuralError("group element must be an integer array");
  std::vector<std::int64_t> coords;
  for (const auto& v : j) coords.push_back(as_int(v, "coordinate"));
  GroupElement x(std::move(coords));
  g.check(x);
  return x;
}

Json to_json(const Multiset& a) {
  Json elems = Json::array();
  for (const auto& [x, m] : a.entries()) elems.push_back(Json::array({to_json(x), mpz_json(m)}));
  Json j = Json::object();
  j["group"] = to_json(a.group());
  j["elements"] = std::move(elems);
  return j;
}

Multiset multiset_from_json(const Json& j) {
  GroupSpec g = group_from_json(field(j, "group"));
  Multiset a(g);
  for (const auto& row : array_field(j, "elements")) {
    if (!row.is_array() || row.size() != 2) throw StructuralError("multiset rows must be [element, multiplicity]");
    mpz_class m = mpz_from_json(row[1], "multiplicity");
    if (m < 0) throw StructuralError("multiplicity must be nonnegative");
    a.insert(element_from_json(row[0], g), m);
  }
  return a;
}

Json to_json(const radon::FunctionTable& f) {
  Json j = Json::object();
  j["n"] = f.n();
  j["d"] = f.d();
  j["values"] = write_indexed(f.values(), f.n(), f.d());
  return j;
}

radon::FunctionTable function_table_from_json(const Json& j) {
  std::size_t d = 0;
  std::uint64_t n = checked_nd(j, d);
  return radon::FunctionTable(n, d, read_indexed(array_field(j, "values"), n, d, "values"));
}

Json to_json(const radon::RadonImage& rf) {
  const std::uint64_t n = rf.n();
  Json rows = Json::array();
  const auto& e = rf.entries();
  for (std::uint64_t i = 0; i < e.size(); ++i) {
    rows.push_back(Json::array({uint_array(radon::coords_of(i / n, n, rf.d())), i % n, rational_to_string(e[i])}));
  }
  Json j = Json::object();
  j["n"] = n;
  j["d"] = rf.d();
  j["entries"] = std::move(rows);
  return j;
}

radon::RadonImage radon_image_from_json(const Json& j) {
  std::size_t d = 0;
  std::uint64_t n = checked_nd(j, d);
  std::uint64_t homs = radon::point_count(n, d);
  if (homs > radon::kMaxImageEntries / n) throw ResourceError("Radon image too large");
  std::vector<mpq_class> entries(homs * n);
  std::vector<bool> seen(entries.size(), false);
  for (const auto& row : array_field(j, "entries")) {
    if (!row.is_array() || row.size() != 3) throw StructuralError("entries rows must be [coeffs, c, value]");
    auto coeffs = uint_vector(row[0], d, n, "coeffs");
    std::uint64_t c = as_uint(row[1], "c");
    if (c >= n) throw StructuralError("residue out of range");
    std::uint64_t idx = radon::index_of(coeffs, n) * n + c;
    if (seen[idx]) throw StructuralError("entries: duplicate row");
    seen[idx] = true;
    if (!row[2].is_string()) throw StructuralError("entries: value must be a \"p/q\" string");
    entries[idx] = rational_from_string(row[2].get<std::string>());
  }
  return radon::RadonImage(n, d, std::move(entries));
}

Json to_json(const radon::InvertingFunction& lambda) {
  Json j = Json::object();
  j["n"] = lambda.n();
  j["d"] = lambda.d();
  j["weights"] = write_indexed(lambda.weights(), lambda.n(), lambda.d());
  return j;
}

radon::InvertingFunction inverting_function_from_json(const Json& j) {
  std::size_t d = 0;
  std::uint64_t n = checked_nd(j, d);
  return radon::InvertingFunction(n, d, read_indexed(array_field(j, "weights"), n, d, "weights"));
}

Json to_json(const ofs::Verdict& v) {
  Json j = Json::object();
  j["n"] = v.n;
  j["member"] = v.member;
  j["ord2"] = v.ord2;
  j["phi"] = v.phi;
  j["branch"] = std::string(ofs::to_string(v.branch));
  return j;
}

ofs::Verdict verdict_from_json(const Json& j) {
  ofs::Verdict v;
  v.n = as_uint(field(j, "n"), "n");
  v.member = as_bool(field(j, "member"), "member");
  v.ord2 = as_uint(field(j, "ord2"), "ord2");
  v.phi = as_uint(field(j, "phi"), "phi");
  const Json& b = field(j, "branch");
  if (!b.is_string()) throw StructuralError("branch must be a string");
  try {
    v.branch = ofs::branch_from_string(b.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw StructuralError(e.what());
  }
  return v;
}

Json to_json(const Sim0Result& r, bool sim) {
  Json j = Json::object();
  j["relation"] = sim ? "sim" : "sim0";
  j["equivalent"] = r.equivalent;
  if (r.witness) {
    Json w = Json::object();
    w["flip_set"] = to_json(r.witness->flip_set);
    w["sum"] = to_json(r.witness->sum_check);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Sim0Result sim0_result_from_json(const Json& j, const GroupSpec& g) {
  Sim0Result r;
  r.equivalent = as_bool(field(j, "equivalent"), "equivalent");
  auto it = j.find("witness");
  if (it != j.end() && !it->is_null()) {
    Sim0Witness w{multiset_from_json(field(*it, "flip_set")), element_from_json(field(*it, "sum"), g)};
    r.witness = std::move(w);
  }
  return r;
}

Json to_json(const counterexample::CounterexamplePair& p, counterexample::ExponentMode mode) {
  Json j = Json::object();
  j["n"] = p.n;
  j["mode"] = std::string(counterexample::to_string(mode));
  j["d"] = optional_json(p.d);
  j["k"] = optional_json(p.k);
  j["a"] = to_json(p.a);
  j["a_prime"] = to_json(p.a_prime);
  Json report = Json::object();
  report["fs_equal"] = p.verified;
  report["sim0_equivalent"] = !p.verified;
  report["verified"] = p.verified;
  j["verification"] = std::move(report);
  return j;
}

counterexample::CounterexamplePair counterexample_from_json(const Json& j) {
  counterexample::CounterexamplePair p;
  p.n = as_uint(field(j, "n"), "n");
  p.d = optional_uint(j, "d");
  p.k = optional_uint(j, "k");
  p.a = multiset_from_json(field(j, "a"));
  p.a_prime = multiset_from_json(field(j, "a_prime"));
  p.verified = as_bool(field(field(j, "verification"), "verified"), "verified");
  return p;
}

Json to_json(const search::ScanReport& r) {
  Json j = Json::object();
  j["group"] = to_json(r.group);
  j["max_size"] = r.max_size;
  j["bound"] = optional_json(r.bound);
  j["exhaustive"] = r.exhaustive;
  j["budget_exceeded"] = r.budget_exceeded;
  j["multisets_examined"] = r.multisets_examined;
  j["sizes_completed"] = r.sizes_completed;
  j["first_violation_size"] = optional_json(r.first_violation_size);
  j["violation_count"] = r.violations.size();
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    Json row = Json::object();
    row["a"] = to_json(v.a);
    row["a_prime"] = to_json(v.a_prime);
    vs.push_back(std::move(row));
  }
  j["violations"] = std::move(vs);
  return j;
}

search::ScanReport scan_report_from_json(const Json& j) {
  search::ScanReport r;
  r.group = group_from_json(field(j, "group"));
  r.max_size = static_cast<std::size_t>(as_uint(field(j, "max_size"), "max_size"));
  r.bound = optional_int(j, "bound");
  r.exhaustive = as_bool(field(j, "exhaustive"), "exhaustive");
  r.budget_exceeded = as_bool(field(j, "budget_exceeded"), "budget_exceeded");
  r.multisets_examined = as_uint(field(j, "multisets_examined"), "multisets_examined");
  r.sizes_completed = static_cast<std::size_t>(as_uint(field(j, "sizes_completed"), "sizes_completed"));
  if (auto f = optional_uint(j, "first_violation_size")) r.first_violation_size = static_cast<std::size_t>(*f);
  for (const auto& row : array_field(j, "violations")) {
    r.violations.push_back({multiset_from_json(field(row, "a")), multiset_from_json(field(row, "a_prime"))});
  }
  return r;
}

Json preimages_to_json(const GroupSpec& g, const std::vector<std::vector<Multiset>>& classes) {
  Json cs = Json::array();
  for (const auto& cls : classes) {
    Json members = Json::array();
    for (const auto& a : cls) members.push_back(to_json(a));
    cs.push_back(std::move(members));
  }
  Json j = Json::object();
  j["group"] = to_json(g);
  j["class_count"] = classes.size();
  j["classes"] = std::move(cs);
  return j;
}

std::vector<std::vector<Multiset>> preimages_from_json(const Json& j) {
  std::vector<std::vector<Multiset>> out;
  for (const auto& cls : array_field(j, "classes")) {
    if (!cls.is_array()) throw StructuralError("each class must be an array of multisets");
    std::vector<Multiset> members;
    for (const auto& a : cls) members.push_back(multiset_from_json(a));
    out.push_back(std::move(members));
  }
  return out;
}

Json to_json(const cyclo::ExponentVector& x) {
  Json j = Json::object();
  j["n"] = x.n;
  j["entries"] = x.entries;
  return j;
}

cyclo::ExponentVector exponent_vector_from_json(const Json& j) {
  std::uint64_t n = as_uint(field(j, "n"), "n");
  std::vector<std::int64_t> e;
  for (const auto& v : array_field(j, "entries")) e.push_back(as_int(v, "entry"));
  return cyclo::ExponentVector(n, std::move(e));
}

}  // namespace fsr::io
