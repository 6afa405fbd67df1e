#include "polar/tables.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "polar/base.hpp"

namespace polar::tables {

namespace {

struct Parser {
  const std::string& s;
  const std::map<std::string, long>& env;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  long expr() {
    long v = term();
    while (true) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  long term() {
    long v = factor();
    while (true) {
      if (eat('*')) v *= factor();
      else if (eat('/')) {
        const long d = factor();
        if (d == 0) throw Error("eval_expr: division by zero in " + s);
        // floor division (operands may be negative)
        long q = v / d, r = v % d;
        if (r != 0 && ((r < 0) != (d < 0))) --q;
        v = q;
      } else {
        return v;
      }
    }
  }
  long factor() {
    skip();
    if (eat('(')) {
      long v = expr();
      if (!eat(')')) throw Error("eval_expr: missing ')' in " + s);
      return v;
    }
    if (eat('-')) return -factor();
    if (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) {
      long v = 0;
      while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
        v = v * 10 + (s[pos++] - '0');
      return v;
    }
    if (pos < s.size() && isalpha(static_cast<unsigned char>(s[pos]))) {
      std::string name;
      while (pos < s.size() && (isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        name += s[pos++];
      if (eat('(')) {
        std::vector<long> args;
        if (!eat(')')) {
          args.push_back(expr());
          while (eat(',')) args.push_back(expr());
          if (!eat(')')) throw Error("eval_expr: missing ')' in " + s);
        }
        if (name == "min" && args.size() == 2) return std::min(args[0], args[1]);
        if (name == "max" && args.size() == 2) return std::max(args[0], args[1]);
        if (name == "floor" && args.size() == 1) return args[0];
        throw Error("eval_expr: unknown function " + name + " in " + s);
      }
      auto it = env.find(name);
      if (it == env.end()) throw Error("eval_expr: unknown variable " + name + " in " + s);
      return it->second;
    }
    throw Error("eval_expr: parse error in " + s + " at position " + std::to_string(pos));
  }
};

}  // namespace

long eval_expr(const std::string& expr, const std::map<std::string, long>& env) {
  Parser p{expr, env};
  const long v = p.expr();
  p.skip();
  if (p.pos != expr.size()) throw Error("eval_expr: trailing input in " + expr);
  return v;
}

std::string substitute(const std::string& tmpl, const std::map<std::string, long>& env) {
  std::string out;
  size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const size_t close = tmpl.find('}', i);
      if (close == std::string::npos) throw Error("substitute: missing '}' in " + tmpl);
      out += std::to_string(eval_expr(tmpl.substr(i + 1, close - i - 1), env));
      i = close + 1;
    } else {
      out += tmpl[i++];
    }
  }
  return out;
}

namespace {
std::string g_data_dir = POLAR_DATA_DIR;
}

std::string data_dir() { return g_data_dir; }
void set_data_dir(const std::string& dir) { g_data_dir = dir; }

Table load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_table: cannot open " + path);
  Table t;
  t.id = path;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("schema=", 0) == 0) {
      t.schema = std::stoi(line.substr(7));
      continue;
    }
    if (line.rfind("columns=", 0) == 0) {
      std::istringstream is(line.substr(8));
      std::string col;
      while (std::getline(is, col, '\t')) t.columns.push_back(col);
      continue;
    }
    std::vector<std::string> cells;
    {
      std::istringstream is(line);
      std::string cell;
      while (std::getline(is, cell, '\t')) cells.push_back(cell);
    }
    if (t.columns.empty()) throw Error("load_table: data before columns= in " + path);
    if (cells.size() != t.columns.size())
      throw Error("load_table: row with " + std::to_string(cells.size()) + " cells, want " +
                  std::to_string(t.columns.size()) + " in " + path + ": " + line);
    TableRow row;
    for (size_t i = 0; i < cells.size(); ++i) {
      const std::string& col = t.columns[i];
      if (col == "key") {
        row.key = cells[i];
      } else if (col == "params") {
        if (cells[i] != "-") {
          std::istringstream is(cells[i]);
          std::string part;
          while (std::getline(is, part, ';')) {
            const auto eq = part.find('=');
            const auto dots = part.find("..");
            if (eq == std::string::npos || dots == std::string::npos)
              throw Error("load_table: bad param range " + part);
            ParamRange pr;
            pr.name = part.substr(0, eq);
            pr.lo = part.substr(eq + 1, dots - eq - 1);
            pr.hi = part.substr(dots + 2);
            row.params.push_back(pr);
          }
        }
      } else {
        row.fields[col] = cells[i];
      }
    }
    t.rows.push_back(std::move(row));
  }
  if (t.schema == 0) throw Error("load_table: missing schema= line in " + path);
  return t;
}

std::vector<std::map<std::string, long>> enumerate_params(const TableRow& row) {
  std::vector<std::map<std::string, long>> out;
  std::map<std::string, long> env;
  const auto constraint = row.fields.find("constraint");
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == row.params.size()) {
      if (constraint != row.fields.end() && constraint->second != "-" &&
          eval_expr(constraint->second, env) == 0)
        return;
      out.push_back(env);
      return;
    }
    const auto& pr = row.params[i];
    const long lo = eval_expr(pr.lo, env);
    const long hi = eval_expr(pr.hi, env);
    for (long v = lo; v <= hi; ++v) {
      env[pr.name] = v;
      rec(i + 1);
    }
    env.erase(pr.name);
  };
  rec(0);
  return out;
}

}  // namespace polar::tables
