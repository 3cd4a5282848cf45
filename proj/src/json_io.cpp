#include "mtf/json_io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>

namespace mtf {

void require_schema(const Json& j, std::string_view expected) {
  if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string())
    throw SchemaError("missing \"schema\" field (expected " + std::string(expected) + ")");
  const std::string got = j["schema"].get<std::string>();
  if (got != expected)
    throw SchemaError("unsupported schema \"" + got + "\" (expected " + std::string(expected) + ")");
}

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.contains(name)) throw SchemaError(std::string("missing field \"") + name + "\"");
  return j[name];
}

int get_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  return j.get<int>();
}

IntVec get_int_vec(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
  IntVec out;
  for (const Json& x : j) out.push_back(get_int(x, what));
  return out;
}

int get_types(const Json& j) {
  const int d = get_int(field(j, "d"), "d");
  if (d < 1) throw SchemaError("d must be positive");
  return d;
}

Json tree_to_json(const TreeSpec& t) {
  Json out;
  out["color"] = t.color + 1;
  Json children = Json::array();
  for (const TreeSpec& c : t.children) children.push_back(tree_to_json(c));
  out["children"] = std::move(children);
  return out;
}

TreeSpec tree_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("tree node must be an object");
  TreeSpec t;
  t.color = get_int(field(j, "color"), "color") - 1;
  const Json& children = field(j, "children");
  if (!children.is_array()) throw SchemaError("children must be an array");
  for (const Json& c : children) t.children.push_back(tree_from_json(c));
  return t;
}

RootTypeSequence to_zero_based(const IntVec& v) {
  RootTypeSequence out;
  for (int x : v) out.push_back(x - 1);
  return out;
}

IntVec to_one_based(const RootTypeSequence& v) {
  IntVec out;
  for (Color x : v) out.push_back(x + 1);
  return out;
}

std::string key_of(const IntVec& z) {
  std::string out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(z[i]);
  }
  return out;
}

IntMatrix matrix_from_json(const Json& j, int d, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != d)
    throw SchemaError(std::string(what) + " must be a d x d array");
  IntMatrix m = IntMatrix::square(d);
  for (int i = 0; i < d; ++i) {
    const IntVec row = get_int_vec(j[i], what);
    if (static_cast<int>(row.size()) != d) throw SchemaError(std::string(what) + " must be a d x d array");
    for (int k = 0; k < d; ++k) m(i, k) = row[k];
  }
  return m;
}

}  // namespace

Json forest_to_json(const TypedForest& f) {
  Json out;
  out["schema"] = kForestSchema;
  out["d"] = f.types();
  Json trees = Json::array();
  for (const TreeSpec& t : f.to_trees()) trees.push_back(tree_to_json(t));
  out["trees"] = std::move(trees);
  return out;
}

TypedForest forest_from_json(const Json& j) {
  require_schema(j, kForestSchema);
  const int d = get_types(j);
  const Json& trees = field(j, "trees");
  if (!trees.is_array()) throw SchemaError("trees must be an array");
  std::vector<TreeSpec> specs;
  for (const Json& t : trees) specs.push_back(tree_from_json(t));
  return TypedForest::from_trees(d, specs);
}

Json coding_to_json(const CodingSequence& x, const std::optional<RootTypeSequence>& c) {
  Json out;
  out["schema"] = kCodingSchema;
  out["d"] = x.types();
  out["lengths"] = x.lengths();
  Json inc = Json::array();
  for (const auto& path : x.increments()) {
    Json steps = Json::array();
    for (const IntVec& s : path) steps.push_back(s);
    inc.push_back(std::move(steps));
  }
  out["increments"] = std::move(inc);
  if (c) out["root_types"] = to_one_based(*c);
  return out;
}

CodingDocument coding_from_json(const Json& j) {
  require_schema(j, kCodingSchema);
  const int d = get_types(j);
  const Json& inc = field(j, "increments");
  if (!inc.is_array() || static_cast<int>(inc.size()) != d)
    throw SchemaError("increments must list d paths");
  std::vector<std::vector<IntVec>> steps(d);
  for (int i = 0; i < d; ++i) {
    if (!inc[i].is_array()) throw SchemaError("each path must be an array of steps");
    for (const Json& s : inc[i]) steps[i].push_back(get_int_vec(s, "increment"));
  }
  CodingDocument doc{CodingSequence::from_increments(d, steps), std::nullopt};
  if (j.contains("lengths") && get_int_vec(j["lengths"], "lengths") != doc.x.lengths())
    throw SchemaError("lengths disagree with the increments");
  if (j.contains("root_types")) doc.root_types = to_zero_based(get_int_vec(j["root_types"], "root_types"));
  return doc;
}

Json law_to_json(const OffspringLaw& law) {
  Json out;
  out["schema"] = kLawSchema;
  out["d"] = law.types();
  Json nu = Json::array();
  for (const Distribution& dist : law.distributions()) {
    Json m = Json::object();
    for (const auto& [z, p] : dist) m[key_of(z)] = to_string(p);
    nu.push_back(std::move(m));
  }
  out["nu"] = std::move(nu);
  return out;
}

OffspringLaw law_from_json(const Json& j) {
  require_schema(j, kLawSchema);
  const int d = get_types(j);
  const Json& nu = field(j, "nu");
  if (!nu.is_array() || static_cast<int>(nu.size()) != d) throw SchemaError("nu must list d distributions");
  std::vector<Distribution> dists;
  for (const Json& m : nu) {
    if (!m.is_object()) throw SchemaError("each distribution must be an object");
    Distribution dist;
    for (const auto& [key, value] : m.items()) {
      if (!value.is_string()) throw SchemaError("weights must be \"p/q\" strings");
      IntVec z = parse_int_list(key);
      if (static_cast<int>(z.size()) != d) throw SchemaError("offspring vector \"" + key + "\" needs d entries");
      dist[std::move(z)] += parse_rational(value.get<std::string>());
    }
    dists.push_back(std::move(dist));
  }
  return OffspringLaw(d, std::move(dists));
}

Json signature_to_json(const SignatureDocument& doc) {
  const Signature& s = doc.sig;
  Json out;
  out["schema"] = kSignatureSchema;
  out["roots"] = s.roots;
  out["sizes"] = s.sizes;
  Json off = Json::array();
  for (int i = 0; i < s.offdiag.rows(); ++i) {
    IntVec row;
    for (int k = 0; k < s.offdiag.cols(); ++k) row.push_back(i == k ? 0 : s.offdiag(i, k));
    off.push_back(row);
  }
  out["offdiag"] = std::move(off);
  if (doc.indegree) {
    Json t = Json::array();
    for (const auto& vertices : *doc.indegree) {
      Json vs = Json::array();
      for (const IntVec& u : vertices) vs.push_back(u);
      t.push_back(std::move(vs));
    }
    out["indegree"] = std::move(t);
  }
  if (doc.census) {
    Json c = Json::array();
    for (const auto& [key, n] : *doc.census)
      c.push_back(Json{{"type", key.first + 1}, {"offspring", key.second}, {"count", n}});
    out["census"] = std::move(c);
  }
  if (doc.degrees) out["degrees"] = *doc.degrees;
  return out;
}

SignatureDocument signature_from_json(const Json& j) {
  require_schema(j, kSignatureSchema);
  SignatureDocument doc;
  doc.sig.roots = get_int_vec(field(j, "roots"), "roots");
  const int d = static_cast<int>(doc.sig.roots.size());
  doc.sig.sizes = get_int_vec(field(j, "sizes"), "sizes");
  if (static_cast<int>(doc.sig.sizes.size()) != d) throw SchemaError("sizes needs d entries");
  doc.sig.offdiag = matrix_from_json(field(j, "offdiag"), d, "offdiag");
  for (int i = 0; i < d; ++i) doc.sig.offdiag(i, i) = 0;
  if (j.contains("indegree")) {
    const Json& t = j["indegree"];
    if (!t.is_array()) throw SchemaError("indegree must be an array");
    IndegreeTuple c;
    for (const Json& vs : t) {
      if (!vs.is_array()) throw SchemaError("indegree entries must be arrays");
      std::vector<IntVec> row;
      for (const Json& u : vs) row.push_back(get_int_vec(u, "indegree"));
      c.push_back(std::move(row));
    }
    doc.indegree = std::move(c);
  }
  if (j.contains("census")) {
    const Json& c = j["census"];
    if (!c.is_array()) throw SchemaError("census must be an array");
    Census census;
    for (const Json& e : c) {
      const int type = get_int(field(e, "type"), "type") - 1;
      census[{type, get_int_vec(field(e, "offspring"), "offspring")}] += get_int(field(e, "count"), "count");
    }
    doc.census = std::move(census);
  }
  if (j.contains("degrees")) doc.degrees = get_int_vec(j["degrees"], "degrees");
  return doc;
}

IntVec parse_int_list(std::string_view text) {
  IntVec out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view part = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
      throw InvalidArgument("not an integer list: \"" + std::string(text) + "\"");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string format_int_list(const IntVec& v) { return key_of(v); }

Json read_json_file(const std::string& path) {
  std::ifstream in;
  std::istream* src = &std::cin;
  if (path != "-") {
    in.open(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    src = &in;
  }
  try {
    return Json::parse(*src);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mtf
