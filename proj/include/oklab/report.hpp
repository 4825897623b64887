// report.hpp
//
// Run manifests, CSV emission, and SVG rendering for 2-D bodies and
// staircases. Every output embeds the manifest as '#' comment lines and is
// byte-deterministic for a fixed (spec, caps, seed).

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oklab/core.hpp"
#include "oklab/ideal.hpp"
#include "oklab/polytope.hpp"
#include "oklab/table.hpp"

namespace oklab {

inline constexpr const char* kToolVersion = "okounkov-lab 0.1.0";

struct RunManifest {
  std::string command;
  std::string input_name;
  std::uint64_t input_hash = 0;
  std::string caps;
  std::uint64_t seed = 0;

  static std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  }

  static RunManifest for_file(const std::string& command, const std::string& path,
                              const std::string& caps, std::uint64_t seed) {
    RunManifest m;
    m.command = command;
    m.input_name = path;
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    m.input_hash = fnv1a(buf.str());
    m.caps = caps;
    m.seed = seed;
    return m;
  }

  std::string header() const {
    std::ostringstream os;
    os << "# " << kToolVersion << "\n";
    os << "# command: " << command << "\n";
    os << "# input: " << input_name << " fnv1a=" << std::hex << input_hash << std::dec << "\n";
    os << "# caps: " << caps << "\n";
    os << "# seed: " << seed << "\n";
    return os.str();
  }
};

/// CSV with exact rationals as "num/den" plus an advisory decimal column.
inline void write_table_csv(std::ostream& os, const RunManifest& manifest,
                            const ConvergenceTable& table) {
  os << manifest.header();
  if (table.target) os << "# target: " << rational_string(*table.target) << "\n";
  if (table.tolerance) os << "# tolerance: " << rational_string(*table.tolerance) << "\n";
  os << table.index_label << ",value,decimal,target,residual\n";
  for (const auto& row : table.rows) {
    os << row.index << "," << rational_string(row.value) << "," << decimal_string(row.value)
       << ",";
    os << (table.target ? rational_string(*table.target) : "-") << ",";
    os << (row.residual ? rational_string(*row.residual) : "-") << "\n";
  }
}

inline void save_table_csv(const std::string& path, const RunManifest& manifest,
                           const ConvergenceTable& table) {
  std::ofstream out(path, std::ios::binary);
  write_table_csv(out, manifest, table);
}

namespace detail {

inline std::string svg_num(const Rational& q) {
  return decimal_string(q, 4);
}

}  // namespace detail

/// 2-D polytope as a labeled SVG polygon.
inline void write_body_svg(std::ostream& os, const RunManifest& manifest, const Polytope& body,
                           const std::string& title) {
  if (body.ambient != 2) throw PreconditionFailed("write_body_svg: 2-D bodies only");
  Rational max_coord = 1;
  for (const auto& v : body.vertices)
    for (const auto& x : v) max_coord = std::max(max_coord, x);
  Rational scale = Rational(360) / max_coord;
  auto px = [&](const Rational& x) { return detail::svg_num(Rational(20) + x * scale); };
  auto py = [&](const Rational& y) { return detail::svg_num(Rational(380) - y * scale); };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"420\" height=\"420\" "
        "viewBox=\"0 0 420 420\">\n";
  os << "<!-- " << kToolVersion << " -->\n";
  os << "<!-- command: " << manifest.command << " -->\n";
  os << "<title>" << title << "</title>\n";
  os << "<line x1=\"20\" y1=\"380\" x2=\"400\" y2=\"380\" stroke=\"#888\"/>\n";
  os << "<line x1=\"20\" y1=\"380\" x2=\"20\" y2=\"10\" stroke=\"#888\"/>\n";
  // vertices arrive sorted; draw the cycle by angle around the centroid
  std::vector<QVec> cyc = body.vertices;
  if (cyc.size() >= 3) {
    QVec c(2, Rational(0));
    for (const auto& v : cyc) {
      c[0] += v[0];
      c[1] += v[1];
    }
    c[0] /= Rational(cyc.size());
    c[1] /= Rational(cyc.size());
    std::sort(cyc.begin(), cyc.end(), [&c](const QVec& a, const QVec& b) {
      auto half = [&c](const QVec& p) { return p[1] == c[1] ? (p[0] < c[0] ? 1 : 0) : (p[1] < c[1] ? 1 : 0); };
      int ha = half(a), hb = half(b);
      if (ha != hb) return ha < hb;
      Rational cross = (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]);
      if (cross != 0) return cross > 0;
      return a < b;
    });
  }
  os << "<polygon points=\"";
  for (const auto& v : cyc) os << px(v[0]) << "," << py(v[1]) << " ";
  os << "\" fill=\"#cfe2f3\" stroke=\"#1155aa\" stroke-width=\"1.5\"/>\n";
  for (const auto& v : body.vertices) {
    os << "<circle cx=\"" << px(v[0]) << "\" cy=\"" << py(v[1])
       << "\" r=\"3\" fill=\"#1155aa\"/>\n";
    os << "<text x=\"" << px(v[0]) << "\" y=\"" << py(v[1]) << "\" dx=\"5\" dy=\"-5\" "
       << "font-size=\"11\">(" << rational_string(v[0]) << "," << rational_string(v[1])
       << ")</text>\n";
  }
  os << "</svg>\n";
}

/// Staircase of a 2-variable monomial ideal.
inline void write_staircase_svg(std::ostream& os, const RunManifest& manifest,
                                const MonomialIdeal& ideal, const std::string& title) {
  if (ideal.nvars() != 2) throw PreconditionFailed("write_staircase_svg: 2 variables only");
  const auto& gens = ideal.generators();
  std::int64_t hi = 1;
  for (const auto& g : gens) hi = std::max({hi, g[0] + 1, g[1] + 1});
  double cell = 360.0 / static_cast<double>(hi + 1);
  auto px = [&](double x) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << 20 + x * cell;
    return s.str();
  };
  auto py = [&](double y) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << 380 - y * cell;
    return s.str();
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"420\" height=\"420\" "
        "viewBox=\"0 0 420 420\">\n";
  os << "<!-- " << kToolVersion << " -->\n";
  os << "<!-- command: " << manifest.command << " -->\n";
  os << "<title>" << title << "</title>\n";
  auto cell_str = [&cell]() {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << cell;
    return s.str();
  }();
  for (std::int64_t x = 0; x <= hi; ++x)
    for (std::int64_t y = 0; y <= hi; ++y) {
      bool inside = ideal.contains({x, y});
      os << "<rect x=\"" << px(static_cast<double>(x)) << "\" y=\""
         << py(static_cast<double>(y + 1)) << "\" width=\"" << cell_str << "\" height=\""
         << cell_str << "\" "
         << "fill=\"" << (inside ? "#cfe2f3" : "#ffffff") << "\" stroke=\"#dddddd\"/>\n";
    }
  for (const auto& g : gens) {
    os << "<circle cx=\"" << px(static_cast<double>(g[0])) << "\" cy=\""
       << py(static_cast<double>(g[1])) << "\" r=\"4\" fill=\"#aa3311\"/>\n";
    os << "<text x=\"" << px(static_cast<double>(g[0])) << "\" y=\""
       << py(static_cast<double>(g[1])) << "\" dx=\"6\" dy=\"-6\" font-size=\"11\">("
       << g[0] << "," << g[1] << ")</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace oklab
