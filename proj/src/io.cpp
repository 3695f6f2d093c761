#include "lpplab/io.hpp"

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "lpplab/errors.hpp"

namespace lpplab {

namespace {

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object(), ErrorKind::kParse, "expected a JSON object");
  const auto it = j.find(key);
  require(it != j.end(), ErrorKind::kParse, std::string("missing \"") + key + "\" key");
  return *it;
}

std::vector<double> number_list(const Json& j, const char* what) {
  require(j.is_array(), ErrorKind::kParse, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    require(v.is_number(), ErrorKind::kParse, std::string(what) + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<PointOnLine> points(const Json& j) {
  require(j.is_array(), ErrorKind::kParse, "point list must be an array");
  std::vector<PointOnLine> out;
  for (const auto& p : j) {
    require(p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number_integer(),
            ErrorKind::kParse, "points are [time, line] pairs");
    out.push_back({p[0].get<double>(), p[1].get<int>()});
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::kParse, origin + ": malformed JSON at " + line_column(text, e.byte > 0 ? e.byte - 1 : 0));
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kInvalidArgument, "cannot open " + path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_json(text, path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::kInvalidArgument, "cannot write " + path);
  out << text;
  require(static_cast<bool>(out), ErrorKind::kInvalidArgument, "failed writing " + path);
}

Json json_of(const Environment& env, const Json& config) {
  Json j;
  j["grid"] = std::vector<double>(env.grid().points().begin(), env.grid().points().end());
  j["lines"] = env.lines();
  if (!config.empty()) j["config"] = config;
  return j;
}

Environment environment_from_json(const Json& j) {
  const auto grid = number_list(field(j, "grid"), "grid");
  const Json& lines = field(j, "lines");
  require(lines.is_array(), ErrorKind::kParse, "\"lines\" must be an array");
  std::vector<std::vector<double>> values;
  for (const auto& l : lines) values.push_back(number_list(l, "line"));
  return Environment(Grid(grid), std::move(values));
}

void save_environment(const Environment& env, const std::string& path, const Json& config) {
  write_text_file(path, json_of(env, config).dump() + "\n");
}

Environment load_environment(const std::string& path) {
  return environment_from_json(read_json_file(path));
}

Json json_of(const EndpointTuple& e) {
  Json j;
  j["starts"] = Json::array();
  j["ends"] = Json::array();
  for (const auto& p : e.starts) j["starts"].push_back({p.time, p.line});
  for (const auto& p : e.ends) j["ends"].push_back({p.time, p.line});
  return j;
}

EndpointTuple endpoints_from_json(const Json& j) {
  return {points(field(j, "starts")), points(field(j, "ends"))};
}

Json json_of(const JumpPath& p) {
  return Json{{"start_time", p.start_time},
              {"end_time", p.end_time},
              {"top_line", p.top_line},
              {"bottom_line", p.bottom_line},
              {"jump_times", p.jump_times}};
}

Json json_of(const DisjointTuple& t) {
  Json j = Json::array();
  for (const auto& p : t.paths) j.push_back(json_of(p));
  return j;
}

Json json_of(const LatticeArray& g) {
  return Json{{"columns", g.columns()}, {"rows", g.rows()}, {"entries", g.entries()}};
}

LatticeArray array_from_json(const Json& j) {
  const Json& c = field(j, "columns");
  const Json& r = field(j, "rows");
  require(c.is_number_unsigned() && r.is_number_unsigned(), ErrorKind::kParse,
          "\"columns\" and \"rows\" must be nonnegative integers");
  return LatticeArray(c.get<std::size_t>(), r.get<std::size_t>(),
                      number_list(field(j, "entries"), "entries"));
}

Json json_of(const GTPattern& x) {
  Json rows = Json::array();
  for (int j = 1; j <= x.size(); ++j) {
    Json row = Json::array();
    for (int i = 1; i <= j; ++i) row.push_back(x(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json json_of(const Permutation& p) { return p.one_line(); }

Permutation permutation_from_json(const Json& j) {
  require(j.is_array(), ErrorKind::kParse, "permutation must be an array");
  std::vector<int> v;
  for (const auto& x : j) {
    require(x.is_number_integer(), ErrorKind::kParse, "permutation entries must be integers");
    v.push_back(x.get<int>());
  }
  return Permutation(std::move(v));
}

Json json_of(LppValue v) {
  if (!v.is_finite()) return "-inf";
  return v.value();
}

void write_profile_csv(std::ostream& out, const DifferenceProfile& profile) {
  const auto old = out.precision(17);
  out << "y,A,g1,g2\n";
  const Grid& g = profile.A.grid();
  for (std::size_t j = 0; j < g.size(); ++j) {
    out << g[j] << ',' << profile.A.at(j) << ',' << profile.g1.at(j) << ',' << profile.g2.at(j)
        << '\n';
  }
  out.precision(old);
}

void write_two_wedge_csv(std::ostream& out, const TwoWedgeResult& result) {
  const auto old = out.precision(17);
  out << "y,M1,M2,H\n";
  const Grid& g = result.H.grid();
  for (std::size_t j = 0; j < g.size(); ++j) {
    out << g[j] << ',' << result.M1.at(j) << ',' << result.M2.at(j) << ',' << result.H.at(j)
        << '\n';
  }
  out.precision(old);
}

}  // namespace lpplab
