#include "armax_reach/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace armax_reach {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ReachRow {
  std::string method;
  int k;
  Eigen::Index dim;
  double lower, upper;
};

const char* method_color(const std::string& tag) {
  if (tag == "SS") return "#1f77b4";
  if (tag == "ARMAX") return "#2ca02c";
  if (tag == "ARMAX-DP") return "#d62728";
  if (tag == "ARMAX-ALG1") return "#9467bd";
  if (tag == "ARMAX-ALG2") return "#ff7f0e";
  return "#7f7f7f";
}

const char* method_dash(const std::string& tag) {
  if (tag == "ARMAX-DP") return "6,3";
  if (tag == "ARMAX-ALG1") return "2,2";
  if (tag == "ARMAX-ALG2") return "8,2,2,2";
  return "";
}

}  // namespace

std::string reach_csv(const std::vector<MethodRun>& runs) {
  std::vector<ReachRow> rows;
  for (const auto& run : runs) {
    const ReachResult& res = run.result;
    for (std::size_t i = 0; i < res.hulls.size(); ++i) {
      const int k = res.first_k + static_cast<int>(i);
      for (Eigen::Index d = 0; d < res.hulls[i].lower.size(); ++d) {
        rows.push_back({res.method, k, d, res.hulls[i].lower[d], res.hulls[i].upper[d]});
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ReachRow& a, const ReachRow& b) {
    if (a.method != b.method) return a.method < b.method;
    if (a.k != b.k) return a.k < b.k;
    return a.dim < b.dim;
  });
  std::ostringstream out;
  out << "method,k,dim,lower,upper\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.k << ',' << r.dim << ',' << fmt(r.lower) << ','
        << fmt(r.upper) << '\n';
  }
  return out.str();
}

std::string containment_csv(const std::vector<MethodRun>& runs) {
  struct Row {
    std::string method;
    int k;
    double fraction;
  };
  std::vector<Row> rows;
  for (const auto& run : runs) {
    if (!run.containment) continue;
    const ContainmentReport& rep = *run.containment;
    for (std::size_t i = 0; i < rep.fraction.size(); ++i) {
      rows.push_back({run.result.method, rep.first_k + static_cast<int>(i), rep.fraction[i]});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.method != b.method) return a.method < b.method;
    return a.k < b.k;
  });
  std::ostringstream out;
  out << "method,k,fraction\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.k << ',' << fmt(r.fraction) << '\n';
  }
  return out.str();
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::vector<BenchRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(), [](const BenchRecord& a, const BenchRecord& b) {
    const std::string ta = method_tag(a.method), tb = method_tag(b.method);
    if (ta != tb) return ta < tb;
    if (a.f_k != b.f_k) return a.f_k < b.f_k;
    if (a.f_n != b.f_n) return a.f_n < b.f_n;
    return a.p < b.p;
  });
  std::ostringstream out;
  out << "method,f_k,f_n,p,median_s,slope_axis,slope\n";
  for (const auto& r : sorted) {
    out << method_tag(r.method) << ',' << r.f_k << ',' << r.f_n << ',' << r.p << ','
        << fmt(r.median_s) << ',' << r.slope_axis << ','
        << (r.slope ? fmt(*r.slope) : std::string()) << '\n';
  }
  return out.str();
}

std::vector<std::string> write_reach_svgs(const std::string& dir,
                                          const ExperimentOutputs& outputs,
                                          const std::array<Eigen::Index, 2>& dims) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  if (outputs.runs.empty() || dims[0] == dims[1]) return written;

  int lo = outputs.runs.front().result.first_k;
  int hi = outputs.runs.front().result.last_k();
  for (const auto& run : outputs.runs) {
    lo = std::min(lo, run.result.first_k);
    hi = std::max(hi, run.result.last_k());
  }

  for (int k = lo; k <= hi; ++k) {
    // Gather polygons of every method that has a materialized set at k.
    struct Poly {
      std::string method;
      std::vector<Eigen::Vector2d> vertices;
    };
    std::vector<Poly> polys;
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (const auto& run : outputs.runs) {
      const ReachResult& res = run.result;
      if (!res.has_sets() || k < res.first_k || k > res.last_k()) continue;
      Poly poly{res.method, project_polygon(res.set_at(k), dims[0], dims[1])};
      for (const auto& v : poly.vertices) {
        min_x = std::min(min_x, v.x());
        max_x = std::max(max_x, v.x());
        min_y = std::min(min_y, v.y());
        max_y = std::max(max_y, v.y());
      }
      polys.push_back(std::move(poly));
    }
    if (polys.empty()) continue;

    std::vector<Eigen::Vector2d> samples;
    for (const auto& run : outputs.samples) {
      if (static_cast<int>(run.y.size()) > k) {
        samples.emplace_back(run.y[static_cast<std::size_t>(k)][dims[0]],
                             run.y[static_cast<std::size_t>(k)][dims[1]]);
      }
    }

    const double pad_x = std::max(1e-12, 0.08 * (max_x - min_x));
    const double pad_y = std::max(1e-12, 0.08 * (max_y - min_y));
    min_x -= pad_x;
    max_x += pad_x;
    min_y -= pad_y;
    max_y += pad_y;
    const double width = 640.0, height = 480.0;
    auto sx = [&](double x) { return (x - min_x) / (max_x - min_x) * width; };
    auto sy = [&](double y) { return height - (y - min_y) / (max_y - min_y) * height; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "  <title>reachable sets at k = " << k << "</title>\n";
    for (const auto& poly : polys) {
      svg << "  <polygon fill=\"none\" stroke=\"" << method_color(poly.method)
          << "\" stroke-width=\"1.5\"";
      if (const char* dash = method_dash(poly.method); dash[0] != '\0') {
        svg << " stroke-dasharray=\"" << dash << "\"";
      }
      svg << " points=\"";
      for (const auto& v : poly.vertices) svg << sx(v.x()) << ',' << sy(v.y()) << ' ';
      svg << "\"><title>" << poly.method << "</title></polygon>\n";
    }
    for (const auto& s : samples) {
      svg << "  <circle cx=\"" << sx(s.x()) << "\" cy=\"" << sy(s.y())
          << "\" r=\"1.2\" fill=\"#444444\" fill-opacity=\"0.5\"/>\n";
    }
    svg << "</svg>\n";

    const std::string name = "reach_k" + std::to_string(k) + ".svg";
    write_text_file((fs::path(dir) / name).string(), svg.str());
    written.push_back(name);
  }
  return written;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  out << content;
}

}  // namespace armax_reach
