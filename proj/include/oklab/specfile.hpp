// specfile.hpp
//
// Series definition files: a TOML-compatible nested-table text format.
// Top-level keys: name, dim, mode, degree_bound; tables: [flag], [caps],
// [complete], [generated], [rule], [[explicit.degree]]; multi-graded specs
// add arity and [[component]] blocks. Parse errors carry line numbers.

#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "oklab/core.hpp"
#include "oklab/errors.hpp"
#include "oklab/flag.hpp"
#include "oklab/multigraded.hpp"
#include "oklab/series.hpp"

namespace oklab {

struct SpecError : std::runtime_error {
  explicit SpecError(const std::vector<std::string>& errors)
      : std::runtime_error(join(errors)), messages(errors) {}
  std::vector<std::string> messages;

  static std::string join(const std::vector<std::string>& es) {
    std::string out = "spec errors:";
    for (const auto& e : es) out += "\n  " + e;
    return out;
  }
};

namespace toml {

struct Value {
  std::variant<std::int64_t, std::string, std::vector<Value>> data;
  int line = 0;

  bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
  bool is_str() const { return std::holds_alternative<std::string>(data); }
  bool is_array() const { return std::holds_alternative<std::vector<Value>>(data); }
  std::int64_t as_int() const { return std::get<std::int64_t>(data); }
  const std::string& as_str() const { return std::get<std::string>(data); }
  const std::vector<Value>& as_array() const { return std::get<std::vector<Value>>(data); }

  Rational as_rational() const {
    if (is_int()) return Rational(as_int());
    if (is_str()) return parse_rational(as_str());
    throw std::runtime_error("expected a number or \"num/den\" string");
  }
};

/// Flat document: dotted path -> value; array-of-table sections get numeric
/// path segments. `count(path)` tracks [[...]] repetitions.
struct Document {
  std::map<std::string, Value> values;
  std::map<std::string, std::int64_t> array_counts;
  std::vector<std::string> errors;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  const Value* find(const std::string& key) const {
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  }
};

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline bool parse_value(const std::string& s, size_t& i, Value& out, int line,
                        std::string& err) {
  skip_ws(s, i);
  if (i >= s.size()) {
    err = "missing value";
    return false;
  }
  out.line = line;
  if (s[i] == '[') {
    ++i;
    std::vector<Value> arr;
    skip_ws(s, i);
    if (i < s.size() && s[i] == ']') {
      ++i;
      out.data = arr;
      return true;
    }
    while (true) {
      Value elem;
      if (!parse_value(s, i, elem, line, err)) return false;
      arr.push_back(std::move(elem));
      skip_ws(s, i);
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == ']') {
        ++i;
        out.data = arr;
        return true;
      }
      err = "expected ',' or ']' in array";
      return false;
    }
  }
  if (s[i] == '"') {
    size_t close = s.find('"', i + 1);
    if (close == std::string::npos) {
      err = "unterminated string";
      return false;
    }
    out.data = s.substr(i + 1, close - i - 1);
    i = close + 1;
    return true;
  }
  size_t start = i;
  while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-' ||
                          s[i] == '+'))
    ++i;
  if (i == start) {
    err = "unrecognized value";
    return false;
  }
  try {
    out.data = static_cast<std::int64_t>(std::stoll(s.substr(start, i - start)));
  } catch (...) {
    err = "bad integer";
    return false;
  }
  return true;
}

inline Document parse(std::istream& in) {
  Document doc;
  std::string line;
  std::string prefix;  // current table path
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    size_t i = 0;
    skip_ws(line, i);
    if (i >= line.size() || line[i] == '\r') continue;
    if (line[i] == '[') {
      bool array_table = (i + 1 < line.size() && line[i + 1] == '[');
      size_t open = i + (array_table ? 2 : 1);
      std::string closer = array_table ? "]]" : "]";
      size_t close = line.find(closer, open);
      if (close == std::string::npos) {
        doc.errors.push_back("line " + std::to_string(lineno) + ": unterminated table header");
        continue;
      }
      std::string name = line.substr(open, close - open);
      if (array_table) {
        std::int64_t idx = doc.array_counts[name]++;
        prefix = name + "." + std::to_string(idx);
      } else {
        // a [a.b] section nests under the last [[a]] element when one exists
        auto dot = name.find('.');
        std::string head = dot == std::string::npos ? name : name.substr(0, dot);
        if (doc.array_counts.count(head)) {
          std::int64_t idx = doc.array_counts[head] - 1;
          prefix = head + "." + std::to_string(idx);
          if (dot != std::string::npos) prefix += name.substr(dot);
        } else {
          prefix = name;
        }
      }
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      doc.errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    std::string key = line.substr(0, eq);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    size_t k0 = 0;
    skip_ws(key, k0);
    key = key.substr(k0);
    if (key.empty()) {
      doc.errors.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    Value v;
    std::string err;
    size_t pos = eq + 1;
    if (!parse_value(line, pos, v, lineno, err)) {
      doc.errors.push_back("line " + std::to_string(lineno) + ": " + err);
      continue;
    }
    std::string full = prefix.empty() ? key : prefix + "." + key;
    if (doc.values.count(full))
      doc.errors.push_back("line " + std::to_string(lineno) + ": duplicate key '" + full + "'");
    doc.values[full] = std::move(v);
  }
  return doc;
}

}  // namespace toml

struct SeriesSpec {
  std::string name;
  size_t dim = 0;
  std::string mode;
  std::int64_t degree_bound = 1;
  bool multigraded = false;
  size_t arity = 1;

  std::vector<QVec> complete_vertices;
  std::vector<std::pair<ExpVec, std::int64_t>> generated_gens;
  std::string rule_name;
  std::map<std::string, std::int64_t> rule_params;
  std::map<std::int64_t, ExpSet> explicit_table;

  Flag flag;
  std::map<std::string, std::int64_t> caps;
  std::vector<SeriesSpec> components;  // multigraded product members

  std::int64_t cap(const std::string& key, std::int64_t fallback) const {
    auto it = caps.find(key);
    return it == caps.end() ? fallback : it->second;
  }
};

namespace detail {

inline ExpVec value_to_expvec(const toml::Value& v, std::vector<std::string>& errors,
                              const std::string& what) {
  ExpVec out;
  if (!v.is_array()) {
    errors.push_back("line " + std::to_string(v.line) + ": " + what + " must be an array");
    return out;
  }
  for (const auto& x : v.as_array()) {
    if (!x.is_int()) {
      errors.push_back("line " + std::to_string(x.line) + ": " + what +
                       " entries must be integers");
      return out;
    }
    out.push_back(x.as_int());
  }
  return out;
}

inline SeriesSpec spec_from_doc(const toml::Document& doc, const std::string& prefix,
                                std::vector<std::string>& errors);

inline void read_mode_payload(const toml::Document& doc, const std::string& prefix,
                              SeriesSpec& spec, std::vector<std::string>& errors) {
  auto key = [&prefix](const std::string& k) { return prefix.empty() ? k : prefix + "." + k; };
  if (spec.mode == "complete") {
    const toml::Value* verts = doc.find(key("complete.vertices"));
    if (!verts || !verts->is_array()) {
      errors.push_back("mode 'complete' needs [complete] vertices = [[..],..]");
      return;
    }
    for (const auto& row : verts->as_array()) {
      if (!row.is_array()) {
        errors.push_back("line " + std::to_string(row.line) + ": vertex must be an array");
        return;
      }
      QVec q;
      for (const auto& x : row.as_array()) {
        try {
          q.push_back(x.as_rational());
        } catch (const std::exception& e) {
          errors.push_back("line " + std::to_string(x.line) + ": " + e.what());
          return;
        }
      }
      spec.complete_vertices.push_back(std::move(q));
    }
  } else if (spec.mode == "generated") {
    const toml::Value* gens = doc.find(key("generated.gens"));
    if (!gens || !gens->is_array()) {
      errors.push_back("mode 'generated' needs [generated] gens = [[exps.., degree],..]");
      return;
    }
    for (const auto& row : gens->as_array()) {
      ExpVec g = value_to_expvec(row, errors, "generator");
      if (!errors.empty()) return;
      if (g.size() < 2) {
        errors.push_back("line " + std::to_string(row.line) +
                         ": generator rows are [exponents..., degree]");
        return;
      }
      std::int64_t deg = g.back();
      g.pop_back();
      spec.generated_gens.push_back({std::move(g), deg});
    }
  } else if (spec.mode == "rule") {
    const toml::Value* name = doc.find(key("rule.name"));
    if (!name || !name->is_str()) {
      errors.push_back("mode 'rule' needs [rule] name = \"...\"");
      return;
    }
    spec.rule_name = name->as_str();
    std::string rp = key("rule.");
    for (const auto& [k, v] : doc.values) {
      if (k.rfind(rp, 0) != 0) continue;
      std::string pname = k.substr(rp.size());
      if (pname == "name" || pname.find('.') != std::string::npos) continue;
      if (!v.is_int()) {
        errors.push_back("line " + std::to_string(v.line) + ": rule parameters are integers");
        return;
      }
      spec.rule_params[pname] = v.as_int();
    }
  } else if (spec.mode == "explicit") {
    std::string base = key("explicit.degree");
    auto count = doc.array_counts.find(base);
    if (count == doc.array_counts.end()) {
      errors.push_back("mode 'explicit' needs [[explicit.degree]] blocks");
      return;
    }
    for (std::int64_t i = 0; i < count->second; ++i) {
      std::string entry = base + "." + std::to_string(i);
      const toml::Value* m = doc.find(entry + ".m");
      const toml::Value* pts = doc.find(entry + ".points");
      if (!m || !m->is_int() || !pts || !pts->is_array()) {
        errors.push_back("[[explicit.degree]] blocks need m = <int> and points = [[..],..]");
        return;
      }
      ExpSet set;
      for (const auto& row : pts->as_array()) {
        ExpVec v = value_to_expvec(row, errors, "point");
        if (!errors.empty()) return;
        set.insert(std::move(v));
      }
      spec.explicit_table[m->as_int()] = std::move(set);
    }
  } else {
    errors.push_back("unknown mode '" + spec.mode + "'");
  }
}

inline SeriesSpec spec_from_doc(const toml::Document& doc, const std::string& prefix,
                                std::vector<std::string>& errors) {
  auto key = [&prefix](const std::string& k) { return prefix.empty() ? k : prefix + "." + k; };
  SeriesSpec spec;
  if (const auto* v = doc.find(key("name")); v && v->is_str()) spec.name = v->as_str();
  const toml::Value* dim = doc.find(key("dim"));
  if (!dim || !dim->is_int()) {
    errors.push_back("missing integer key 'dim'" + (prefix.empty() ? "" : " in " + prefix));
    return spec;
  }
  spec.dim = static_cast<size_t>(dim->as_int());
  const toml::Value* mode = doc.find(key("mode"));
  if (!mode || !mode->is_str()) {
    errors.push_back("missing string key 'mode'" + (prefix.empty() ? "" : " in " + prefix));
    return spec;
  }
  spec.mode = mode->as_str();
  if (const auto* v = doc.find(key("degree_bound")); v && v->is_int())
    spec.degree_bound = v->as_int();
  if (const auto* v = doc.find(key("arity")); v && v->is_int())
    spec.arity = static_cast<size_t>(v->as_int());

  spec.flag = Flag::identity(spec.dim);
  if (const auto* v = doc.find(key("flag.dehomogenize")); v && v->is_int())
    spec.flag.dehomogenizing_index = static_cast<size_t>(v->as_int());
  if (const auto* v = doc.find(key("flag.permutation")); v && v->is_array()) {
    std::vector<size_t> perm;
    for (const auto& x : v->as_array())
      if (x.is_int()) perm.push_back(static_cast<size_t>(x.as_int() - 1));  // 1-based in files
    spec.flag.permutation = perm;
  }
  if (const auto* v = doc.find(key("flag.unimodular")); v && v->is_array()) {
    std::vector<ExpVec> rows;
    for (const auto& row : v->as_array()) rows.push_back(value_to_expvec(row, errors, "matrix row"));
    spec.flag.unimodular = rows;
  }
  std::string cap_prefix = key("caps.");
  for (const auto& [k, v] : doc.values) {
    if (k.rfind(cap_prefix, 0) != 0) continue;
    if (v.is_int()) spec.caps[k.substr(cap_prefix.size())] = v.as_int();
  }

  if (spec.mode == "multi_product") {
    spec.multigraded = true;
    std::string base = key("component");
    auto count = doc.array_counts.find(base);
    if (count == doc.array_counts.end() || count->second == 0) {
      errors.push_back("mode 'multi_product' needs [[component]] blocks");
      return spec;
    }
    for (std::int64_t i = 0; i < count->second; ++i) {
      SeriesSpec sub = spec_from_doc(doc, base + "." + std::to_string(i), errors);
      if (!errors.empty()) return spec;
      spec.components.push_back(std::move(sub));
    }
    if (spec.arity != spec.components.size()) spec.arity = spec.components.size();
    return spec;
  }
  read_mode_payload(doc, prefix, spec, errors);
  return spec;
}

}  // namespace detail

/// Build the runtime series from a validated spec.
inline GradedSeries build_series(const SeriesSpec& spec) {
  if (spec.mode == "complete") {
    Polytope p = hull(spec.complete_vertices);
    return GradedSeries::complete(std::move(p), spec.degree_bound);
  }
  if (spec.mode == "generated") return GradedSeries::generated(spec.generated_gens);
  if (spec.mode == "rule")
    return GradedSeries::rule(spec.rule_name, spec.rule_params, spec.dim, spec.degree_bound);
  if (spec.mode == "explicit")
    return GradedSeries::explicit_table(spec.explicit_table, spec.dim, spec.degree_bound);
  throw SpecError({"mode '" + spec.mode + "' is not a single-graded mode"});
}

inline MultiGradedSeries build_multigraded(const SeriesSpec& spec) {
  if (spec.mode != "multi_product")
    throw SpecError({"mode '" + spec.mode + "' is not a multi-graded mode"});
  std::vector<GradedSeries> parts;
  for (const auto& sub : spec.components) parts.push_back(build_series(sub));
  return MultiGradedSeries::product(std::move(parts));
}

/// Parse and validate a spec file. The audit runs the multiplicativity check
/// up to the declared (or default) working degree; violations are reported
/// with the offending triple.
inline SeriesSpec parse_spec(const std::string& path, bool run_audit = true) {
  std::ifstream in(path);
  if (!in) throw SpecError({"cannot open spec file '" + path + "'"});
  toml::Document doc = toml::parse(in);
  std::vector<std::string> errors = doc.errors;
  SeriesSpec spec = detail::spec_from_doc(doc, "", errors);
  if (!errors.empty()) throw SpecError(errors);
  try {
    spec.flag.validate();
    if (spec.multigraded) {
      MultiGradedSeries w = build_multigraded(spec);
      if (run_audit) w.audit_multiplicativity(spec.cap("audit", 4));
    } else {
      GradedSeries s = build_series(spec);
      std::int64_t fallback = 8;
      if (spec.mode == "explicit" && !spec.explicit_table.empty())
        fallback = spec.explicit_table.rbegin()->first;  // the declared range
      if (run_audit) s.audit_multiplicativity(spec.cap("audit", fallback));
    }
  } catch (const AuditFailure& e) {
    throw SpecError({std::string("audit: ") + e.what()});
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError({e.what()});
  }
  return spec;
}

}  // namespace oklab
