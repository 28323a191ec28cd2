#include "maslovp/problem.hpp"

#include <fstream>
#include <sstream>

#include "maslovp/error.hpp"

namespace maslovp {

const CoefficientPath& Problem::path(const std::string& name) const {
  auto it = paths.find(name);
  if (it == paths.end()) throw Error(ErrorKind::InvalidArgument, "problem has no path named '" + name + "'");
  return it->second;
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, "at " + where + ": " + what);
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, "missing field '" + key + "'");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  return j.get<int>();
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

Matrix matrix(const Json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    schema_error(where, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const Json& row = j[r];
    const std::string rw = where + "/" + std::to_string(r);
    if (!row.is_array() || static_cast<int>(row.size()) != dim) schema_error(rw, "row has the wrong length");
    for (int c = 0; c < dim; ++c) m(r, c) = number(row[c], rw + "/" + std::to_string(c));
  }
  return m;
}

std::vector<Matrix> matrix_list(const Json& j, int dim, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(matrix(j[i], dim, where + "/" + std::to_string(i)));
  return out;
}

SymplecticBoundary parse_boundary(const Json& j, int n) {
  const std::string kind = text(require(j, "kind", "/P"), "/P/kind");
  try {
    if (kind == "identity") return SymplecticBoundary::rotation(n, 0.0);
    if (kind == "rotation") return SymplecticBoundary::rotation(n, number(require(j, "theta", "/P"), "/P/theta"));
    if (kind == "matrix") return SymplecticBoundary::validate(matrix(require(j, "entries", "/P"), 2 * n, "/P/entries"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(e.kind(), std::string("in /P: ") + e.what());
  }
  schema_error("/P/kind", "unknown boundary kind '" + kind + "'");
}

CoefficientPath parse_path(const Json& j, const std::string& name, int n, const SymplecticBoundary& boundary) {
  const std::string where = "/paths/" + name;
  const int dim = 2 * n;
  const std::string kind = text(require(j, "kind", where), where + "/kind");
  if (kind == "constant") {
    if (j.contains("scalar")) return CoefficientPath::scalar(n, number(j["scalar"], where + "/scalar"));
    return CoefficientPath::constant(matrix(require(j, "value", where), dim, where + "/value"));
  }
  if (kind == "trig") {
    const Matrix c0 = matrix(require(j, "c0", where), dim, where + "/c0");
    const std::vector<Matrix> cs = j.contains("cos") ? matrix_list(j["cos"], dim, where + "/cos") : std::vector<Matrix>{};
    const std::vector<Matrix> sn = j.contains("sin") ? matrix_list(j["sin"], dim, where + "/sin") : std::vector<Matrix>{};
    const std::string frame = j.contains("frame") ? text(j["frame"], where + "/frame") : "none";
    if (frame != "none" && frame != "boundary") schema_error(where + "/frame", "expected 'none' or 'boundary'");
    return CoefficientPath::trig(c0, cs, sn, frame == "boundary" ? &boundary : nullptr);
  }
  if (kind == "samples") {
    std::vector<Matrix> values = matrix_list(require(j, "values", where), dim, where + "/values");
    if (values.empty()) schema_error(where + "/values", "needs at least one sample");
    return CoefficientPath::samples(std::move(values));
  }
  schema_error(where + "/kind", "unknown path kind '" + kind + "'");
}

std::shared_ptr<const Hamiltonian> parse_hamiltonian(const Json& j, int n) {
  const std::string kind = text(require(j, "kind", "/hamiltonian"), "/hamiltonian/kind");
  auto num = [&](const char* key, double fallback, bool required) {
    if (!j.contains(key)) {
      if (required) schema_error("/hamiltonian", std::string("missing field '") + key + "'");
      return fallback;
    }
    return number(j[key], std::string("/hamiltonian/") + key);
  };
  if (kind == "radial") {
    return std::make_shared<RadialHamiltonian>(n, num("a", 0.0, true), num("c", 0.0, false),
                                               num("alpha", 1.0, false), num("q", 0.0, false));
  }
  if (kind == "quadratic") return std::make_shared<RadialHamiltonian>(n, 0.5 * num("b", 0.0, true), 0.0, 1.0, 0.0);
  schema_error("/hamiltonian/kind", "unknown Hamiltonian kind '" + kind + "'");
}

Settings parse_settings(const Json& j) {
  Settings s;
  if (!j.is_object()) schema_error("/settings", "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const std::string where = "/settings/" + key;
    const Json& v = it.value();
    if (key == "m") s.m = integer(v, where);
    else if (key == "tol") s.tol = number(v, where);
    else if (key == "grid") s.grid = integer(v, where);
    else if (key == "steps") s.steps = integer(v, where);
    else if (key == "quad_points") s.quad_points = integer(v, where);
    else if (key == "l") s.l = number(v, where);
    else if (key == "r") s.r = number(v, where);
    else if (key == "twist") s.twist = number(v, where);
    else if (key == "starts") s.starts = integer(v, where);
    else if (key == "seed") {
      if (!v.is_number_unsigned()) schema_error(where, "expected a non-negative integer");
      s.seed = v.get<std::uint64_t>();
    } else if (key == "threads") {
      if (!v.is_number_unsigned()) schema_error(where, "expected a non-negative integer");
      s.threads = v.get<unsigned>();
    } else {
      schema_error(where, "unknown setting");
    }
  }
  return s;
}

}  // namespace

Problem parse_problem(const std::string& source) {
  Json doc;
  try {
    doc = Json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_column(source, byte);
    std::string detail = e.what();
    const auto colon = detail.find(": ");
    if (colon != std::string::npos) detail = detail.substr(colon + 2);
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + detail);
  }
  if (!doc.is_object()) schema_error("/", "expected an object");
  Problem p;
  p.document = doc;
  p.n = integer(require(doc, "n", "/"), "/n");
  if (p.n < 1) schema_error("/n", "must be positive");
  p.boundary = parse_boundary(require(doc, "P", "/"), p.n);
  if (doc.contains("paths")) {
    const Json& paths = doc["paths"];
    if (!paths.is_object()) schema_error("/paths", "expected an object");
    for (auto it = paths.begin(); it != paths.end(); ++it) {
      p.paths.emplace(it.key(), parse_path(it.value(), it.key(), p.n, *p.boundary));
    }
  }
  if (doc.contains("hamiltonian")) p.hamiltonian = parse_hamiltonian(doc["hamiltonian"], p.n);
  if (doc.contains("settings")) p.settings = parse_settings(doc["settings"]);
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    if (k != "n" && k != "P" && k != "paths" && k != "hamiltonian" && k != "settings" && k != "description") {
      schema_error("/" + k, "unknown top-level field");
    }
  }
  return p;
}

Problem load_problem(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open problem file '" + file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

}  // namespace maslovp
