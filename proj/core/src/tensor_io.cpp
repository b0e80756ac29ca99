#include "weitz/tensor_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "weitz/error.hpp"

namespace weitz {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::kSchema, field + ": " + message);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // nlohmann reports "at line L, column C" in its message.
    throw Error(ErrorCode::kParse, e.what());
  }
}

int read_int(const Json& object, const char* key, const std::string& field) {
  const auto it = object.find(key);
  if (it == object.end()) schema_error(field + "." + key, "missing");
  if (!it->is_number_integer()) schema_error(field + "." + key, "expected an integer");
  return it->get<int>();
}

Mask read_index(const Json& entry, const char* key, int degree, int n, const std::string& field) {
  const std::string where = field + "." + key;
  const auto it = entry.find(key);
  if (it == entry.end()) schema_error(where, "missing");
  if (!it->is_array()) schema_error(where, "expected an array of indices");
  if (static_cast<int>(it->size()) != degree) {
    schema_error(where, "expected " + std::to_string(degree) + " indices, got " + std::to_string(it->size()));
  }
  Mask mask = 0;
  int previous = 0;
  for (const auto& v : *it) {
    if (!v.is_number_integer()) schema_error(where, "indices must be integers");
    const int i = v.get<int>();
    if (i < 1 || i > n) schema_error(where, "index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
    if (i <= previous) schema_error(where, "indices must be strictly increasing");
    mask |= Mask{1} << (i - 1);
    previous = i;
  }
  return mask;
}

DoubleForm form_from_json(const Json& doc, bool require_curvature) {
  if (!doc.is_object()) schema_error("<root>", "expected a JSON object");
  const int n = read_int(doc, "n", "<root>");
  if (n < 1 || n > kMaxDimension) schema_error("<root>.n", "dimension outside [1, " + std::to_string(kMaxDimension) + "]");
  const int p = doc.contains("p") ? read_int(doc, "p", "<root>") : 2;
  const int q = doc.contains("q") ? read_int(doc, "q", "<root>") : 2;
  if (p < 0 || p > n || q < 0 || q > n) schema_error("<root>", "degrees must lie in [0, n]");
  if (require_curvature && (p != 2 || q != 2)) schema_error("<root>", "curvature tensors have degree (2,2)");

  bool symmetric = require_curvature;
  if (const auto it = doc.find("symmetric"); it != doc.end()) {
    if (!it->is_boolean()) schema_error("<root>.symmetric", "expected a boolean");
    symmetric = it->get<bool>();
    if (require_curvature && !symmetric) schema_error("<root>.symmetric", "curvature tensors are symmetric");
  }
  if (symmetric && p != q) schema_error("<root>.symmetric", "only (p,p) forms can be symmetric");

  const auto entries = doc.find("entries");
  if (entries == doc.end()) schema_error("<root>.entries", "missing");
  if (!entries->is_array()) schema_error("<root>.entries", "expected an array");

  const auto& ctx = context(n);
  DoubleForm shape(ctx, p, q);
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(shape.coeffs().rows(), shape.coeffs().cols());
  Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(coeffs.rows(), coeffs.cols());

  auto assign = [&](Eigen::Index r, Eigen::Index c, double value, const std::string& field) {
    if (seen(r, c) && coeffs(r, c) != value) schema_error(field, "conflicts with an earlier entry");
    coeffs(r, c) = value;
    seen(r, c) = 1;
  };

  for (std::size_t e = 0; e < entries->size(); ++e) {
    const std::string field = "entries[" + std::to_string(e) + "]";
    const Json& entry = (*entries)[e];
    if (!entry.is_object()) schema_error(field, "expected an object");
    const Mask row = read_index(entry, "ij", p, n, field);
    const Mask col = read_index(entry, "kl", q, n, field);
    const auto value = entry.find("value");
    if (value == entry.end()) schema_error(field + ".value", "missing");
    if (!value->is_number()) schema_error(field + ".value", "expected a number");
    const double v = value->get<double>();
    const auto r = static_cast<Eigen::Index>(ctx.rank_of(row));
    const auto c = static_cast<Eigen::Index>(ctx.rank_of(col));
    assign(r, c, v, field);
    if (symmetric && r != c) assign(c, r, v, field);
  }
  return DoubleForm(ctx, p, q, std::move(coeffs));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json index_array(Mask m) {
  Json out = Json::array();
  for (int i : MultiIndex::from_mask(m).indices()) out.push_back(i);
  return out;
}

}  // namespace

LoadedTensor parse_tensor(std::string_view text, BianchiPolicy policy) {
  DoubleForm form = form_from_json(parse_json(text), true);
  const double residual = bianchi_residual(form);
  const bool violates = residual > CurvatureTensor::kDefaultBianchiTol * std::max(form.norm(), 1.0);
  switch (policy) {
    case BianchiPolicy::kStrict:
      if (violates) {
        throw Error(ErrorCode::kBianchiViolation,
                    "tensor violates the first Bianchi identity (residual " + std::to_string(residual) + ")");
      }
      return {CurvatureTensor(std::move(form)), residual, violates, false};
    case BianchiPolicy::kProject:
      return {CurvatureTensor(project_bianchi(form)), residual, violates, true};
    case BianchiPolicy::kWarn:
      break;
  }
  return {CurvatureTensor(std::move(form), std::numeric_limits<double>::infinity()), residual, violates, false};
}

LoadedTensor load_tensor(const std::filesystem::path& path, BianchiPolicy policy) {
  return parse_tensor(read_file(path), policy);
}

DoubleForm parse_form(std::string_view text) { return form_from_json(parse_json(text), false); }

DoubleForm load_form(const std::filesystem::path& path) { return parse_form(read_file(path)); }

std::string serialize_form(const DoubleForm& form) {
  const auto& ctx = form.context();
  const bool symmetric = form.is_symmetric(0.0);
  Json doc;
  doc["n"] = form.dim();
  doc["p"] = form.p();
  doc["q"] = form.q();
  doc["symmetric"] = symmetric;
  Json entries = Json::array();
  const auto rows = ctx.basis(form.p());
  const auto cols = ctx.basis(form.q());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = symmetric ? r : 0; c < cols.size(); ++c) {
      const double v = form.coeffs()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (v == 0.0) continue;
      Json entry;
      entry["ij"] = index_array(rows[r]);
      entry["kl"] = index_array(cols[c]);
      entry["value"] = v;
      entries.push_back(std::move(entry));
    }
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

void save_form(const DoubleForm& form, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << serialize_form(form);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace weitz
