// Versioned structured text tables (the paper's ground-truth data) and the
// small integer expression evaluator used for their formula columns.
#pragma once

#include <map>
#include <string>
#include <vector>

namespace polar::tables {

// Integer expressions over named variables: + - * / (floor division),
// min(,), max(,), floor(x) as identity on integers, parentheses.
long eval_expr(const std::string& expr, const std::map<std::string, long>& env);

// Substitutes {expr} occurrences, e.g. "AIII:{k},{n-k}" -> "AIII:2,3".
std::string substitute(const std::string& tmpl, const std::map<std::string, long>& env);

struct ParamRange {
  std::string name;
  std::string lo, hi;  // expressions over earlier parameters
};

struct TableRow {
  std::string key;
  std::vector<ParamRange> params;
  std::map<std::string, std::string> fields;
};

struct Table {
  std::string id;
  int schema = 0;
  std::vector<std::string> columns;
  std::vector<TableRow> rows;
};

Table load_table(const std::string& path);

// All parameter assignments of a row, in lexicographic enumeration order.
// When the row has a "constraint" field, assignments evaluating to 0 are
// dropped.
std::vector<std::map<std::string, long>> enumerate_params(const TableRow& row);

std::string data_dir();  // POLAR_DATA_DIR unless overridden
void set_data_dir(const std::string& dir);

}  // namespace polar::tables
