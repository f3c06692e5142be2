#include "netdesign/game_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "netdesign/errors.hpp"

namespace netdesign {
namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string_view source, const std::string& msg) {
  throw Error(ErrorKind::kParse, std::string(source) + ": " + msg);
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Convert the byte offset into line:column.
    const size_t byte = std::min(e.byte, text.size());
    size_t line = 1, col = 1;
    for (size_t k = 0; k + 1 < byte; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(source, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": syntax error");
  }
}

const json& field(const json& doc, const char* name, std::string_view source) {
  if (!doc.is_object()) fail(source, "top level must be an object");
  auto it = doc.find(name);
  if (it == doc.end()) fail(source, std::string("missing field '") + name + "'");
  return *it;
}

double number(const json& v, const std::string& where, std::string_view source) {
  if (!v.is_number()) fail(source, "field '" + where + "': expected a number");
  return v.get<double>();
}

int read_n(const json& doc, std::string_view source) {
  const json& v = field(doc, "n", source);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    fail(source, "field 'n': expected a positive integer");
  }
  return static_cast<int>(v.get<long long>());
}

Vector vector_field(const json& doc, const char* name, int n, std::string_view source) {
  const json& v = field(doc, name, source);
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    fail(source, std::string("field '") + name + "': expected an array of " +
                     std::to_string(n) + " numbers");
  }
  Vector out(n);
  for (int i = 0; i < n; ++i) {
    out(i) = number(v[i], std::string(name) + "[" + std::to_string(i + 1) + "]", source);
  }
  return out;
}

std::optional<Vector> optional_vector(const json& doc, const char* name, int n,
                                      std::string_view source) {
  if (!doc.contains(name)) return std::nullopt;
  return vector_field(doc, name, n, source);
}

Matrix matrix_field(const json& doc, const char* name, int n, std::string_view source) {
  const json& v = field(doc, name, source);
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    fail(source, std::string("field '") + name + "': expected " + std::to_string(n) +
                     " rows");
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) {
    const std::string row = std::string(name) + "[" + std::to_string(i + 1) + "]";
    if (!v[i].is_array() || static_cast<int>(v[i].size()) != n) {
      fail(source, "field '" + row + "': expected " + std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      out(i, j) = number(v[i][j], row + "[" + std::to_string(j + 1) + "]", source);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (out(i, i) != 0.0) {
      fail(source, std::string("field '") + name + "[" + std::to_string(i + 1) + "][" +
                       std::to_string(i + 1) + "]': diagonal must be zero");
    }
  }
  return out;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i))));
  return out;
}

int index_entry(const json& v, const std::string& where, int n, std::string_view source) {
  if (!v.is_number_integer()) fail(source, "field '" + where + "': expected an integer index");
  const long long k = v.get<long long>();
  if (k < 1 || k > n) {
    fail(source, "field '" + where + "': index " + std::to_string(k) + " outside 1.." +
                     std::to_string(n));
  }
  return static_cast<int>(k - 1);
}

}  // namespace

NetworkGame GameDocument::network_game() const { return NetworkGame(g, a, upper); }

PublicGoodsGame GameDocument::public_goods_game() const {
  if (!is_public_goods()) {
    throw Error(ErrorKind::kInvalidArgument, "game document has no gamma block");
  }
  return PublicGoodsGame(g, theta ? *theta : Vector::Zero(g.size()),
                         GammaFamily::affine(*gamma_c, *gamma_d));
}

GameDocument parse_game(std::string_view text, std::string_view source) {
  const json doc = parse_json(text, source);
  const int n = read_n(doc, source);
  GameDocument out;
  try {
    out.g = AdjacencyMatrix(matrix_field(doc, "g", n, source));
    out.a = vector_field(doc, "a", n, source);
    out.theta = optional_vector(doc, "theta", n, source);
    out.upper = optional_vector(doc, "upper", n, source);
    if (doc.contains("gamma")) {
      const json& gamma = doc["gamma"];
      if (!gamma.is_object()) fail(source, "field 'gamma': expected an object");
      out.gamma_c = vector_field(gamma, "c", n, source);
      out.gamma_d = vector_field(gamma, "d", n, source);
    }
    // Constructing the games runs the remaining invariant checks.
    out.network_game();
    if (out.is_public_goods()) out.public_goods_game();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse) throw;
    fail(source, e.what());
  }
  return out;
}

GameDocument read_game_file(const std::string& path) {
  return parse_game(read_text_file(path), path);
}

std::string write_game(const GameDocument& doc) {
  json out;
  out["n"] = doc.g.size();
  out["g"] = to_json(doc.g.matrix());
  out["a"] = to_json(doc.a);
  if (doc.theta) out["theta"] = to_json(*doc.theta);
  if (doc.upper) out["upper"] = to_json(*doc.upper);
  if (doc.is_public_goods()) {
    out["gamma"] = {{"c", to_json(*doc.gamma_c)}, {"d", to_json(*doc.gamma_d)}};
  }
  return out.dump(2) + "\n";
}

DesignProblem parse_problem(std::string_view text, std::string_view source) {
  const json doc = parse_json(text, source);
  const int n = read_n(doc, source);
  Vector a = vector_field(doc, "a", n, source);
  std::vector<FixedEntry> fixed;
  std::vector<EntryPosition> free;
  if (doc.contains("fixed")) {
    const json& list = doc["fixed"];
    if (!list.is_array()) fail(source, "field 'fixed': expected an array");
    for (size_t k = 0; k < list.size(); ++k) {
      const std::string where = "fixed[" + std::to_string(k + 1) + "]";
      if (!list[k].is_array() || list[k].size() != 3) {
        fail(source, "field '" + where + "': expected [i, j, value]");
      }
      fixed.push_back({{index_entry(list[k][0], where, n, source),
                        index_entry(list[k][1], where, n, source)},
                       number(list[k][2], where, source)});
    }
  }
  if (doc.contains("free")) {
    const json& list = doc["free"];
    if (!list.is_array()) fail(source, "field 'free': expected an array");
    for (size_t k = 0; k < list.size(); ++k) {
      const std::string where = "free[" + std::to_string(k + 1) + "]";
      if (!list[k].is_array() || list[k].size() != 2) {
        fail(source, "field '" + where + "': expected [i, j]");
      }
      free.push_back({index_entry(list[k][0], where, n, source),
                      index_entry(list[k][1], where, n, source)});
    }
  }
  try {
    return DesignProblem(std::move(a), std::move(fixed), std::move(free));
  } catch (const Error& e) {
    fail(source, e.what());
  }
}

DesignProblem read_problem_file(const std::string& path) {
  return parse_problem(read_text_file(path), path);
}

std::string write_problem(const DesignProblem& problem) {
  json out;
  out["n"] = problem.size();
  out["a"] = to_json(problem.a());
  json fixed = json::array();
  for (const FixedEntry& f : problem.fixed()) {
    fixed.push_back({f.pos.row + 1, f.pos.col + 1, f.value});
  }
  json free = json::array();
  for (const EntryPosition& p : problem.free()) free.push_back({p.row + 1, p.col + 1});
  out["fixed"] = fixed;
  out["free"] = free;
  return out.dump(2) + "\n";
}

Matrix parse_pattern(std::string_view text, std::string_view source) {
  const json doc = parse_json(text, source);
  return matrix_field(doc, "pattern", read_n(doc, source), source);
}

Matrix read_pattern_file(const std::string& path) {
  return parse_pattern(read_text_file(path), path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace netdesign
