#include "admnet/vector_field.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "admnet/error.hpp"

namespace admnet {

VectorFieldSpec VectorFieldSpec::make(std::vector<std::string> var_names,
                                      std::vector<std::vector<int>> cells,
                                      std::vector<Polynomial> components,
                                      std::optional<Partition> cell_class) {
  const int n = static_cast<int>(var_names.size());
  if (n == 0) throw ValidationError("vector field needs at least one variable");
  if (static_cast<int>(components.size()) != n) {
    throw ValidationError("expected one component per variable");
  }
  for (const auto& p : components) {
    if (p.nvars() != n) throw ValidationError("component polynomial has wrong variable count");
  }
  std::vector<int> owner(n, -1);
  for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
    if (cells[c].empty()) throw ValidationError("empty cell");
    for (int i : cells[c]) {
      if (i < 0 || i >= n) throw ValidationError("cell coordinate out of range");
      if (owner[i] != -1) throw ValidationError("cells overlap");
      owner[i] = c;
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
    throw ValidationError("cells do not cover all coordinates");
  }
  const int m = static_cast<int>(cells.size());
  Partition classes;
  if (cell_class) {
    if (cell_class->size() != m) throw ValidationError("cell classes do not match cell count");
    for (const auto& b : cell_class->blocks()) {
      for (int c : b) {
        if (cells[c].size() != cells[b.front()].size()) {
          throw ValidationError("cell class mixes cells of different dimension");
        }
      }
    }
    classes = *cell_class;
  } else {
    std::vector<int> labels(m);
    for (int c = 0; c < m; ++c) labels[c] = static_cast<int>(cells[c].size());
    classes = Partition::from_labels(labels);
  }
  return VectorFieldSpec{std::move(var_names), std::move(cells), std::move(components),
                         std::move(classes)};
}

VectorFieldSpec VectorFieldSpec::scalar(std::vector<std::string> var_names,
                                        std::vector<Polynomial> components) {
  std::vector<std::vector<int>> cells(var_names.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = {static_cast<int>(i)};
  return make(std::move(var_names), std::move(cells), std::move(components));
}

int VectorFieldSpec::cell_of(int coordinate) const {
  for (int c = 0; c < num_cells(); ++c) {
    if (std::find(cells[c].begin(), cells[c].end(), coordinate) != cells[c].end()) return c;
  }
  throw Error("coordinate out of range");
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// "(a b)(c)" -> {{a,b},{c}}
std::vector<std::vector<std::string>> parse_groups(const std::string& text, int line) {
  std::vector<std::vector<std::string>> groups;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg, pos);
  };
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(') fail("expected '('");
    auto close = text.find(')', pos);
    if (close == std::string::npos) fail("unterminated group");
    std::istringstream in(text.substr(pos + 1, close - pos - 1));
    std::vector<std::string> items;
    for (std::string tok; in >> tok;) items.push_back(tok);
    if (items.empty()) fail("empty group");
    groups.push_back(std::move(items));
    pos = close + 1;
  }
  return groups;
}

}  // namespace

VectorFieldSpec parse_field(const std::string& text) {
  std::vector<std::string> vars;
  std::optional<std::vector<std::vector<std::string>>> cell_groups;
  std::optional<std::vector<std::vector<std::string>>> class_groups;
  std::map<int, std::pair<std::string, int>> exprs;  // coordinate -> (expr, line)
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw ParseError("line " + std::to_string(line) + ": " + msg, 0);
    };
    if (s.rfind("vars:", 0) == 0) {
      std::istringstream names(s.substr(5));
      for (std::string tok; names >> tok;) vars.push_back(tok);
    } else if (s.rfind("cells:", 0) == 0) {
      cell_groups = parse_groups(s.substr(6), line);
    } else if (s.rfind("classes:", 0) == 0) {
      class_groups = parse_groups(s.substr(8), line);
    } else if (s[0] == 'f') {
      auto eq = s.find('=');
      if (eq == std::string::npos) fail("expected 'f<i> = <expr>'");
      std::string idx = trim(s.substr(1, eq - 1));
      if (idx.empty() || !std::all_of(idx.begin(), idx.end(), ::isdigit)) {
        fail("bad component label 'f" + idx + "'");
      }
      int i = std::stoi(idx);
      if (!exprs.emplace(i, std::make_pair(s.substr(eq + 1), line)).second) {
        fail("duplicate component f" + idx);
      }
    } else {
      fail("unrecognized line '" + s + "'");
    }
  }
  if (vars.empty()) throw ParseError("missing 'vars:' line", 0);
  const int n = static_cast<int>(vars.size());
  std::vector<Polynomial> comps;
  for (int i = 1; i <= n; ++i) {
    auto it = exprs.find(i);
    if (it == exprs.end()) throw ParseError("missing component f" + std::to_string(i), 0);
    try {
      comps.push_back(parse_polynomial(it->second.first, vars));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(it->second.second) + " (f" + std::to_string(i) +
                           "): " + e.what(),
                       e.position());
    }
  }
  if (static_cast<int>(exprs.size()) != n) throw ParseError("component index out of range", 0);
  std::vector<std::vector<int>> cells;
  if (cell_groups) {
    for (const auto& g : *cell_groups) {
      std::vector<int> cell;
      for (const auto& name : g) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw ParseError("unknown variable '" + name + "' in cells", 0);
        cell.push_back(static_cast<int>(it - vars.begin()));
      }
      cells.push_back(std::move(cell));
    }
  } else {
    for (int i = 0; i < n; ++i) cells.push_back({i});
  }
  std::optional<Partition> classes;
  if (class_groups) {
    std::vector<std::vector<int>> blocks;
    for (const auto& g : *class_groups) {
      std::vector<int> b;
      for (const auto& tok : g) {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
          throw ParseError("class entries must be 1-based cell numbers", 0);
        }
        const int c = std::stoi(tok);
        if (c < 1 || c > static_cast<int>(cells.size())) {
          throw ParseError("class entry " + tok + " is not a cell number", 0);
        }
        b.push_back(c - 1);
      }
      blocks.push_back(std::move(b));
    }
    classes = Partition(static_cast<int>(cells.size()), std::move(blocks));
  }
  return VectorFieldSpec::make(std::move(vars), std::move(cells), std::move(comps), classes);
}

VectorFieldSpec load_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read field file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_field(buf.str());
}

std::string format_field(const VectorFieldSpec& f) {
  std::ostringstream out;
  out << "vars:";
  for (const auto& v : f.var_names) out << ' ' << v;
  out << "\ncells: ";
  for (const auto& c : f.cells) {
    out << '(';
    for (std::size_t k = 0; k < c.size(); ++k) out << (k ? " " : "") << f.var_names[c[k]];
    out << ')';
  }
  out << "\nclasses: ";
  for (const auto& b : f.cell_class.blocks()) {
    out << '(';
    for (std::size_t k = 0; k < b.size(); ++k) out << (k ? " " : "") << b[k] + 1;
    out << ')';
  }
  out << '\n';
  for (int i = 0; i < f.dimension(); ++i) {
    out << 'f' << i + 1 << " = " << to_string(f.components[i], f.var_names) << '\n';
  }
  return out.str();
}

std::vector<Rational> evaluate(const VectorFieldSpec& f, std::span<const Rational> x) {
  std::vector<Rational> out;
  out.reserve(f.components.size());
  for (const auto& p : f.components) out.push_back(evaluate(p, x));
  return out;
}

}  // namespace admnet
