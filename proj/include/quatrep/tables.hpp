#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "quatrep/brauer.hpp"
#include "quatrep/certify.hpp"

namespace quatrep {

struct TableRow {
  int id = 0;
  int dim = 0;
  int restriction_commutant = -1;  // gamma rows: commutant of the restriction to Delta_f
  std::string restriction_pattern;
  std::vector<std::string> origins;  // built representations containing this irreducible
  std::vector<std::vector<long>> character;
};

/// Irreducibles of Gamma_f or Delta_f with their L-packet data.
struct IrrTable {
  std::string group;
  CheckParams params;
  long M = 1;
  std::string mode;
  std::vector<BrauerClass> classes;
  std::vector<TableRow> rows;
};

/// group is "gamma" or "delta". Throws BudgetError when the group exceeds max_order.
IrrTable irreducibles_table(const CheckParams& p, const std::string& group, std::size_t max_order = 400);

nlohmann::json to_json(const IrrTable& t);
/// Header row, tab separated, LF line endings.
std::string to_tsv(const IrrTable& t);

}  // namespace quatrep
