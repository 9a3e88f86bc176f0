#include "mubg/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "mubg/error.hpp"

namespace mubg {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Node {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
  std::vector<Node> children;
};

class Reader {
 public:
  explicit Reader(std::vector<ManifestError>& errors) : errors_(errors) {}

  void error(int line, const std::string& msg) { errors_.push_back({line, msg}); }

  // Checks keys and blocks against the allowed sets; duplicates are errors.
  void check(const Node& n, const std::set<std::string>& keys, const std::set<std::string>& blocks) {
    std::set<std::string> seen;
    for (const auto& e : n.entries) {
      if (!keys.count(e.key)) {
        error(e.line, "unknown key '" + e.key + "'" + (n.name.empty() ? "" : " in block '" + n.name + "'"));
      } else if (!seen.insert(e.key).second) {
        error(e.line, "duplicate key '" + e.key + "'");
      }
    }
    for (const auto& c : n.children) {
      if (!blocks.count(c.name)) error(c.line, "unknown block '" + c.name + "'");
    }
  }

  const Entry* find(const Node& n, const std::string& key) {
    for (const auto& e : n.entries) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }

  std::optional<long> integer(const Entry& e, long lo, long hi) {
    try {
      std::size_t used = 0;
      long v = std::stol(e.value, &used);
      if (used != e.value.size()) throw std::invalid_argument("trailing");
      if (v < lo || v > hi) {
        error(e.line, "'" + e.key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                          e.value);
        return std::nullopt;
      }
      return v;
    } catch (const std::logic_error&) {
      error(e.line, "malformed number for '" + e.key + "': '" + e.value + "'");
      return std::nullopt;
    }
  }

  std::optional<int> int_field(const Node& n, const std::string& key, long lo, long hi) {
    const Entry* e = find(n, key);
    if (!e) return std::nullopt;
    auto v = integer(*e, lo, hi);
    if (!v) return std::nullopt;
    return static_cast<int>(*v);
  }

 private:
  std::vector<ManifestError>& errors_;
};

bool parse_tree(const std::string& text, Node& root, std::vector<ManifestError>& errors) {
  std::vector<Node*> stack{&root};
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line == "}") {
      if (stack.size() == 1) {
        errors.push_back({lineno, "unmatched '}'"});
      } else {
        stack.pop_back();
      }
      continue;
    }
    if (line.back() == '{') {
      std::string name = trim(line.substr(0, line.size() - 1));
      if (name.empty() || name.find_first_of(" =") != std::string::npos) {
        errors.push_back({lineno, "malformed block header '" + line + "'"});
        name = "?";
      }
      Node child;
      child.name = name;
      child.line = lineno;
      stack.back()->children.push_back(std::move(child));
      stack.push_back(&stack.back()->children.back());
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back({lineno, "expected 'key = value', got '" + line + "'"});
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) errors.push_back({lineno, "missing key"});
    if (value.empty()) errors.push_back({lineno, "missing value for '" + key + "'"});
    stack.back()->entries.push_back({key, value, lineno});
  }
  if (stack.size() > 1) errors.push_back({stack.back()->line, "block '" + stack.back()->name + "' is not closed"});
  return errors.empty();
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string to_string(Task t) {
  switch (t) {
    case Task::pseries: return "pseries";
    case Task::tate: return "tate";
    case Task::locss: return "locss";
    case Task::collapse: return "collapse";
    case Task::kappa: return "kappa";
    case Task::integrality: return "integrality";
  }
  return "?";
}

std::optional<Task> parse_task(const std::string& name) {
  for (Task t : {Task::pseries, Task::tate, Task::locss, Task::collapse, Task::kappa, Task::integrality}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

EquivBundle parse_bundle(const std::string& text, std::size_t factors) {
  EquivBundle out;
  std::string t = trim(text);
  if (t.empty() || t == "0") return out;
  std::size_t pos = 0;
  while (pos < t.size()) {
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos >= t.size() || t[pos] != '(') throw ChernError("bundle summand must start with '(' in '" + text + "'");
    auto close = t.find(')', pos);
    if (close == std::string::npos) throw ChernError("unclosed summand in '" + text + "'");
    std::string inner = t.substr(pos + 1, close - pos - 1);
    EquivLineBundle line;
    auto bar = inner.find('|');
    try {
      std::string ch = trim(bar == std::string::npos ? inner : inner.substr(0, bar));
      std::size_t used = 0;
      line.character = std::stoi(ch, &used);
      if (used != ch.size()) throw std::invalid_argument(ch);
      if (bar != std::string::npos) line.c1 = parse_int_list(inner.substr(bar + 1));
    } catch (const std::logic_error&) {
      throw ChernError("malformed summand '(" + inner + ")'");
    }
    if (bar == std::string::npos) line.c1.assign(factors, 0);
    if (line.c1.size() != factors) {
      throw ChernError("summand '(" + inner + ")' needs " + std::to_string(factors) + " Chern entries");
    }
    out.lines.push_back(line);
    pos = close + 1;
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos < t.size()) {
      if (t[pos] != '+') throw ChernError("expected '+' between summands in '" + text + "'");
      ++pos;
    }
  }
  return out;
}

std::string ManifestParse::describe_errors() const {
  std::ostringstream out;
  for (const auto& e : errors) out << "line " << e.line << ": " << e.message << "\n";
  return out.str();
}

ManifestParse parse_manifest(const std::string& text, const std::string& base_dir) {
  ManifestParse result;
  Node root;
  if (!parse_tree(text, root, result.errors)) return result;
  Reader rd(result.errors);
  Manifest m;
  m.base_dir = base_dir;

  const Entry* task = rd.find(root, "task");
  if (!task) {
    rd.error(0, "missing required field 'task'");
    return result;
  }
  auto t = parse_task(task->value);
  if (!t) {
    rd.error(task->line, "unknown task '" + task->value + "'");
    return result;
  }
  m.task = *t;

  std::set<std::string> keys{"task"};
  std::set<std::string> blocks;
  const bool wants_fgl = m.task == Task::pseries || m.task == Task::tate || m.task == Task::locss ||
                         m.task == Task::collapse;
  if (wants_fgl) keys.insert({"fgl", "beta", "log_terms", "fgl_table", "p", "degree"});
  if (m.task == Task::pseries) keys.insert("n");
  if (m.task == Task::tate || m.task == Task::locss || m.task == Task::collapse) {
    keys.insert({"floor", "mod_power", "degrees"});
  }
  if (m.task == Task::locss) keys.insert({"variables", "sign"});
  if (m.task == Task::kappa) {
    keys.insert({"group", "b_degree"});
    blocks.insert("element");
  }
  if (m.task == Task::integrality) {
    keys.insert("group");
    blocks.insert("point");
  }
  rd.check(root, keys, blocks);

  if (wants_fgl) {
    if (const Entry* e = rd.find(root, "fgl")) {
      if (e->value == "additive" || e->value == "multiplicative" || e->value == "universal" || e->value == "table") {
        m.fgl.kind = e->value;
      } else {
        rd.error(e->line, "unknown fgl '" + e->value + "' (additive, multiplicative, universal, table)");
      }
    }
    if (const Entry* e = rd.find(root, "beta")) {
      if (m.fgl.kind != "multiplicative") rd.error(e->line, "'beta' applies to the multiplicative fgl only");
      if (auto v = rd.integer(*e, -1000000, 1000000)) m.fgl.beta = BigInt(*v);
    }
    if (const Entry* e = rd.find(root, "log_terms")) {
      if (m.fgl.kind != "universal") rd.error(e->line, "'log_terms' applies to the universal fgl only");
      if (auto v = rd.integer(*e, 1, 8)) m.fgl.log_terms = static_cast<int>(*v);
    }
    if (const Entry* e = rd.find(root, "fgl_table")) {
      if (m.fgl.kind != "table") rd.error(e->line, "'fgl_table' needs 'fgl = table'");
      m.fgl.table = e->value;
    } else if (m.fgl.kind == "table") {
      rd.error(0, "missing required field 'fgl_table' for 'fgl = table'");
    }
    if (const Entry* e = rd.find(root, "p")) {
      if (auto v = rd.integer(*e, 2, 97)) {
        if (!is_prime(static_cast<int>(*v)))
          rd.error(e->line, "'p' must be prime, got " + e->value);
        else
          m.prime = static_cast<int>(*v);
      }
    } else if (!(m.task == Task::pseries && rd.find(root, "n"))) {
      rd.error(0, "missing required field 'p' for task " + to_string(m.task));
    }
    m.degree = rd.int_field(root, "degree", 1, 64);
    if (!rd.find(root, "degree")) rd.error(0, "missing required field 'degree' for task " + to_string(m.task));
  }
  if (m.task == Task::pseries) m.multiple = rd.int_field(root, "n", 0, 64);
  if (m.task == Task::tate || m.task == Task::locss || m.task == Task::collapse) {
    m.floor = rd.int_field(root, "floor", -32, 0);
    if (!rd.find(root, "floor")) rd.error(0, "missing required field 'floor' for task " + to_string(m.task));
    m.mod_power = rd.int_field(root, "mod_power", 0, 8);
    if (const Entry* e = rd.find(root, "degrees")) {
      auto dots = e->value.find("..");
      try {
        if (dots == std::string::npos) throw std::invalid_argument(e->value);
        int a = std::stoi(e->value.substr(0, dots));
        int b = std::stoi(e->value.substr(dots + 2));
        if (a > b) throw std::invalid_argument(e->value);
        m.degree_range = {a, b};
      } catch (const std::logic_error&) {
        rd.error(e->line, "'degrees' must be a range 'lo..hi', got '" + e->value + "'");
      }
    }
  }
  if (m.task == Task::locss) {
    if (auto v = rd.int_field(root, "variables", 1, 4)) m.variables = *v;
    if (const Entry* e = rd.find(root, "sign")) {
      if (e->value == "standard")
        m.sign = SignRule::standard;
      else if (e->value == "literal")
        m.sign = SignRule::literal;
      else
        rd.error(e->line, "unknown sign rule '" + e->value + "' (standard, literal)");
    }
  }

  if (m.task == Task::kappa || m.task == Task::integrality) {
    if (const Entry* e = rd.find(root, "group")) {
      try {
        m.group = AbelianGroup(parse_int_list(e->value));
      } catch (const std::exception&) {
        rd.error(e->line, "'group' must list cyclic orders >= 2, e.g. '2,2', got '" + e->value + "'");
      }
    } else {
      rd.error(0, "missing required field 'group' for task " + to_string(m.task));
    }
  }
  if (m.task == Task::kappa) {
    if (auto v = rd.int_field(root, "b_degree", 0, 8)) m.b_degree = *v;
    if (m.group) {
      m.fixed.group = *m.group;
      m.fixed.b_degree = m.b_degree;
    }
    for (const auto& el : root.children) {
      if (el.name != "element") continue;
      rd.check(el, {"at"}, {"component"});
      const Entry* at = rd.find(el, "at");
      if (!at) {
        rd.error(el.line, "element block needs 'at'");
        continue;
      }
      if (!m.group) continue;
      Element g;
      try {
        g = m.group->parse_element(at->value);
      } catch (const Error& ex) {
        rd.error(at->line, ex.what());
        continue;
      }
      if (m.group->is_identity(g)) {
        rd.error(at->line, "fixed data at the identity is not used");
        continue;
      }
      if (m.fixed.components.count(g)) {
        rd.error(at->line, "element " + at->value + " listed twice");
        continue;
      }
      const int ord = m.group->order_of(g);
      auto& comps = m.fixed.components[g];
      for (const auto& cb : el.children) {
        if (cb.name != "component") continue;
        rd.check(cb, {"base", "tangent", "normal", "eval", "fiber"}, {});
        FixedComponent comp;
        try {
          if (const Entry* e = rd.find(cb, "base")) {
            if (e->value != "point") comp.base = ModelBase(parse_int_list(e->value));
          }
          const std::size_t k = comp.base.factors();
          const Entry* te = rd.find(cb, "tangent");
          comp.tangent = te ? parse_bundle(te->value, k) : default_tangent(comp.base);
          if (const Entry* e = rd.find(cb, "normal")) comp.normal = parse_bundle(e->value, k);
          if (const Entry* e = rd.find(cb, "eval")) comp.eval = parse_bundle(e->value, k);
          if (const Entry* e = rd.find(cb, "fiber")) comp.fiber = parse_int_list(e->value);
          validate_component(comp, ord);
          comps.push_back(std::move(comp));
        } catch (const Error& ex) {
          rd.error(cb.line, ex.what());
        } catch (const std::logic_error&) {
          rd.error(cb.line, "malformed integer list in component");
        }
      }
    }
  }
  if (m.task == Task::integrality) {
    std::set<Element> seen;
    for (const auto& pb : root.children) {
      if (pb.name != "point") continue;
      rd.check(pb, {"at", "value"}, {});
      const Entry* at = rd.find(pb, "at");
      const Entry* val = rd.find(pb, "value");
      if (!at || !val) {
        rd.error(pb.line, "point block needs 'at' and 'value'");
        continue;
      }
      if (!m.group) continue;
      try {
        IntegralityPoint pt{m.group->parse_element(at->value), val->value, val->line};
        if (!seen.insert(pt.at).second) {
          rd.error(at->line, "element " + at->value + " listed twice");
          continue;
        }
        parse_scalar(pt.value, ScalarKind::cyclotomic(m.group->exponent()));
        m.points.push_back(std::move(pt));
      } catch (const Error& ex) {
        rd.error(pb.line, ex.what());
      }
    }
    if (m.points.empty()) rd.error(0, "integrality needs at least one point block");
  }
  if (result.errors.empty()) result.manifest = std::move(m);
  return result;
}

ManifestParse load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ManifestParse r;
    r.errors.push_back({0, "cannot open manifest " + path});
    return r;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_manifest(buf.str(), dir.empty() ? "." : dir);
}

}  // namespace mubg
