#include "linechase/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace linechase {

namespace {

using nlohmann::json;

Point read_vector(const json& node, Eigen::Index dim, const std::string& field) {
  if (!node.is_array()) throw InstanceParseError(field + ": expected an array");
  if (static_cast<Eigen::Index>(node.size()) != dim) {
    throw InstanceParseError(field + ": expected " + std::to_string(dim) + " coordinates, got " +
                             std::to_string(node.size()));
  }
  Point p(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const json& v = node[static_cast<std::size_t>(k)];
    if (!v.is_number()) {
      throw InstanceParseError(field + "[" + std::to_string(k) + "]: expected a number");
    }
    p(k) = v.get<double>();
    if (!std::isfinite(p(k))) {
      throw InstanceParseError(field + "[" + std::to_string(k) + "]: not finite");
    }
  }
  return p;
}

Line read_line(const json& node, Eigen::Index dim, const std::string& field) {
  if (!node.is_object()) throw InstanceParseError(field + ": expected an object");
  if (!node.contains("point")) throw InstanceParseError(field + ".point: missing");
  if (!node.contains("dir")) throw InstanceParseError(field + ".dir: missing");
  const Point base = read_vector(node["point"], dim, field + ".point");
  const Vector dir = read_vector(node["dir"], dim, field + ".dir");
  if (dir.norm() == 0.0) throw InstanceParseError(field + ".dir: zero direction vector");
  return canonical_line(Line(base, dir));
}

json write_vector(const Point& p) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < p.size(); ++k) arr.push_back(p(k));
  return arr;
}

json write_line(const Line& line) {
  const Line c = canonical_line(line);
  return json{{"point", write_vector(c.base())}, {"dir", write_vector(c.dir())}};
}

void write_point_cells(std::ostream& out, const Point& p) {
  for (Eigen::Index k = 0; k < p.size(); ++k) out << ',' << format_real(p(k));
}

void write_empty_cells(std::ostream& out, Eigen::Index n) {
  for (Eigen::Index k = 0; k < n; ++k) out << ',';
}

void write_axis_header(std::ostream& out, const std::string& prefix, Eigen::Index dim) {
  for (Eigen::Index k = 0; k < dim; ++k) out << ',' << prefix << k;
}

}  // namespace

Line canonical_line(const Line& line) {
  const Vector& d = line.dir();
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    if (d(k) > 0.0) return line;
    if (d(k) < 0.0) return Line(line.base(), -d);
  }
  return line;
}

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InstanceParseError("document: expected a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw InstanceParseError("dim: missing or not an integer");
  }
  const auto dim = doc["dim"].get<long long>();
  if (dim < 2) throw InstanceParseError("dim: must be at least 2");
  if (!doc.contains("start")) throw InstanceParseError("start: missing");

  Instance inst;
  inst.start = read_vector(doc["start"], dim, "start");
  if (doc.contains("initial_line") && !doc["initial_line"].is_null()) {
    inst.initial_line = read_line(doc["initial_line"], dim, "initial_line");
  }
  if (doc.contains("lines")) {
    const json& lines = doc["lines"];
    if (!lines.is_array()) throw InstanceParseError("lines: expected an array");
    for (std::size_t t = 0; t < lines.size(); ++t) {
      inst.requests.push_back(read_line(lines[t], dim, "lines[" + std::to_string(t) + "]"));
    }
  }
  try {
    inst.validate();
  } catch (const InvalidInput& e) {
    throw InstanceParseError(e.what());
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceParseError("cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& instance) {
  json doc;
  doc["dim"] = instance.dim();
  doc["start"] = write_vector(instance.start);
  if (instance.initial_line) doc["initial_line"] = write_line(*instance.initial_line);
  json lines = json::array();
  for (const auto& l : instance.requests) lines.push_back(write_line(l));
  doc["lines"] = std::move(lines);
  return doc.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write instance file '" + path + "'");
  out << serialize_instance(instance);
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_path_csv(std::ostream& out, const Path& path) {
  if (path.points.empty()) return;
  const Eigen::Index dim = path.points.front().size();
  out << "step";
  write_axis_header(out, "x", dim);
  out << ",step_cost,cumulative_cost\n";
  double total = 0.0;
  for (std::size_t t = 0; t < path.points.size(); ++t) {
    const double step = t == 0 ? 0.0 : distance(path.points[t - 1], path.points[t]);
    total += step;
    out << t;
    write_point_cells(out, path.points[t]);
    out << ',' << format_real(step) << ',' << format_real(total) << '\n';
  }
}

void write_transcript_csv(std::ostream& out, const AdversaryTranscript& tr) {
  if (tr.alg_points.empty()) return;
  const Eigen::Index dim = tr.alg_points.front().size();
  out << "step";
  write_axis_header(out, "line_point_x", dim);
  write_axis_header(out, "line_dir_x", dim);
  write_axis_header(out, "alg_x", dim);
  write_axis_header(out, "adv_x", dim);
  out << ",alg_step_cost,adv_step_cost\n";
  for (std::size_t t = 0; t < tr.alg_points.size(); ++t) {
    out << t;
    if (t == 0) {
      write_empty_cells(out, 2 * dim);
    } else {
      write_point_cells(out, tr.lines[t - 1].base());
      write_point_cells(out, tr.lines[t - 1].dir());
    }
    write_point_cells(out, tr.alg_points[t]);
    write_point_cells(out, tr.adversary_points[t]);
    const double alg = t == 0 ? 0.0 : distance(tr.alg_points[t - 1], tr.alg_points[t]);
    const double adv =
        t == 0 ? 0.0 : distance(tr.adversary_points[t - 1], tr.adversary_points[t]);
    out << ',' << format_real(alg) << ',' << format_real(adv) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "beta,simulated_ratio,theoretical_ratio,gap\n";
  for (const auto& r : rows) {
    out << format_real(r.beta) << ',' << format_real(r.simulated_ratio) << ','
        << format_real(r.theoretical_ratio) << ',' << format_real(r.gap) << '\n';
  }
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& rows) {
  out << "instance_id,policy,alg_cost,opt_cost,ratio,notes\n";
  for (const auto& r : rows) {
    out << r.instance_id << ',' << r.policy << ',' << format_real(r.alg_cost) << ','
        << format_real(r.opt_cost) << ',' << format_real(r.ratio) << ',' << r.notes << '\n';
  }
}

}  // namespace linechase
