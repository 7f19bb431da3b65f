#include "neoplanner/graph_io.hpp"

#include <json.hpp>

#include <initializer_list>
#include <set>

#include "neoplanner/errors.hpp"

namespace neoplanner {

using nlohmann::json;

namespace {

const char* k_source_name(KFactorSource s) {
  return s == KFactorSource::kParent ? "parent" : "child";
}

json config_to_json(const ValueConfig& c) {
  return json{{"alpha", c.alpha},
              {"gamma", c.gamma},
              {"exploration_c", c.exploration_c},
              {"default_value", c.default_value},
              {"invalid_value", c.invalid_value},
              {"k_exponent", c.k_exponent},
              {"max_sweeps", c.max_sweeps},
              {"convergence_eps", c.convergence_eps},
              {"k_source", k_source_name(c.k_source)}};
}

// Schema reader that reports problems by JSON pointer.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  void expect_object(std::initializer_list<const char*> fields) const {
    if (!j_.is_object()) fail("expected an object");
    std::set<std::string> allowed(fields.begin(), fields.end());
    for (const auto& [key, value] : j_.items()) {
      if (!allowed.count(key)) fail("unknown field '" + key + "'");
    }
    for (const char* f : fields) {
      if (!j_.contains(f)) fail(std::string("missing field '") + f + "'");
    }
  }

  Reader at(const std::string& key) const { return {j_.at(key), path_ + "/" + key}; }
  Reader at(std::size_t i) const { return {j_.at(i), path_ + "/" + std::to_string(i)}; }

  const json& raw() const { return j_; }
  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }

  double number() const {
    if (!j_.is_number()) fail("expected a number");
    return j_.get<double>();
  }
  std::uint64_t count() const {
    if (!j_.is_number_unsigned()) fail("expected a nonnegative integer");
    return j_.get<std::uint64_t>();
  }
  int integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<int>();
  }
  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  StateId state_id() const {
    try {
      return StateId::parse(string());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, path_); }

 private:
  const json& j_;
  std::string path_;
};

ValueConfig read_config(const Reader& r) {
  r.expect_object({"alpha", "gamma", "exploration_c", "default_value", "invalid_value",
                   "k_exponent", "max_sweeps", "convergence_eps", "k_source"});
  ValueConfig c;
  c.alpha = r.at("alpha").number();
  c.gamma = r.at("gamma").number();
  c.exploration_c = r.at("exploration_c").number();
  c.default_value = r.at("default_value").number();
  c.invalid_value = r.at("invalid_value").number();
  c.k_exponent = r.at("k_exponent").number();
  c.max_sweeps = r.at("max_sweeps").integer();
  c.convergence_eps = r.at("convergence_eps").number();
  const std::string src = r.at("k_source").string();
  if (src == "parent") {
    c.k_source = KFactorSource::kParent;
  } else if (src == "child") {
    c.k_source = KFactorSource::kChild;
  } else {
    r.at("k_source").fail("k_source must be 'parent' or 'child'");
  }
  try {
    c.validate();
  } catch (const ConfigError& e) {
    r.fail(e.what());
  }
  return c;
}

}  // namespace

std::string serialize_graph(const StateGraph& graph) {
  json nodes = json::array();
  for (const auto& [id, n] : graph.nodes()) {
    nodes.push_back(json{{"id", id.str()},
                         {"description", n.description},
                         {"value", n.value},
                         {"visits", n.visits},
                         {"action_capacity", n.action_capacity},
                         {"actions_tried", n.actions_tried}});
  }
  json edges = json::array();
  for (const GraphEdge& e : graph.edges()) {
    edges.push_back(json{{"action", e.action},
                         {"reward", e.reward},
                         {"source", e.source.str()},
                         {"sink", e.sink.str()},
                         {"traversals", e.traversals}});
  }
  json doc = {{"version", kGraphFormatVersion},
              {"config_echo", config_to_json(graph.config())},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)},
              {"root", StateId::root().str()},
              {"invalid", StateId::invalid().str()}};
  return doc.dump(2) + "\n";
}

StateGraph deserialize_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed graph file", e.byte);
  }

  const Reader top(doc, "");
  if (!doc.is_object()) top.fail("expected an object");
  if (!doc.contains("version")) top.fail("missing field 'version'");
  const int version = top.at("version").integer();
  if (version != kGraphFormatVersion) throw VersionError(version, kGraphFormatVersion);
  top.expect_object({"version", "config_echo", "nodes", "edges", "root", "invalid"});

  if (top.at("root").string() != StateId::root().str()) {
    top.at("root").fail("unexpected root marker");
  }
  if (top.at("invalid").string() != StateId::invalid().str()) {
    top.at("invalid").fail("unexpected invalid marker");
  }
  const ValueConfig config = read_config(top.at("config_echo"));

  std::vector<StateNode> nodes;
  const Reader jn = top.at("nodes");
  for (std::size_t i = 0, n = jn.size(); i < n; ++i) {
    const Reader r = jn.at(i);
    r.expect_object({"id", "description", "value", "visits", "action_capacity",
                     "actions_tried"});
    StateNode node;
    node.id = r.at("id").state_id();
    node.description = r.at("description").string();
    node.value = r.at("value").number();
    node.visits = r.at("visits").count();
    node.action_capacity = r.at("action_capacity").count();
    const Reader tried = r.at("actions_tried");
    for (std::size_t k = 0, m = tried.size(); k < m; ++k) {
      node.actions_tried.insert(tried.at(k).string());
    }
    nodes.push_back(std::move(node));
  }

  std::vector<GraphEdge> edges;
  const Reader je = top.at("edges");
  for (std::size_t i = 0, n = je.size(); i < n; ++i) {
    const Reader r = je.at(i);
    r.expect_object({"action", "reward", "source", "sink", "traversals"});
    edges.push_back(GraphEdge{r.at("action").string(), r.at("reward").number(),
                              r.at("source").state_id(), r.at("sink").state_id(),
                              r.at("traversals").count()});
  }

  StateGraph graph = StateGraph::from_parts(config, std::move(nodes), std::move(edges));
  refresh_augmented_values(graph, graph.config());
  return graph;
}

}  // namespace neoplanner
