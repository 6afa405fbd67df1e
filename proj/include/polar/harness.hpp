// Fixture registry, table verification, report generation.
#pragma once

#include "polar/action.hpp"
#include "polar/slicerep.hpp"
#include "polar/tables.hpp"

namespace polar::harness {

struct Options {
  uint64_t seed = 1;
  int samples = 8;
  action::Tolerances tol;
  int max_ambient = 16;
};

enum class Status { pass, fail, inconclusive, skipped };

struct Record {
  std::string id;
  Status status = Status::fail;
  std::string expected, measured;
  std::string detail;  // residuals / skip reason
  uint64_t seed = 0;
};

struct VerificationReport {
  std::vector<Record> records;
  int passed = 0, failed = 0, inconclusive = 0, skipped = 0;

  void add(Record r);
  int exit_code() const;  // 0 pass, 1 any fail, 2 any inconclusive
};

// Subgroup DSL, interpreted against the pair's structured ambient:
//   items separated by '+', filling the ambient in order:
//     so<k>, su<k>, u<k>, sp<k>, g2, spin7, spin8, spin9, adsu3, e<k> (empty)
//   "s:" prefix imposes the global traceless constraint across u-blocks
//   single items: "k" (the isotropy algebra), "full" (all of g),
//   "tensor(<f><p>,<f><q>)" for the four tensor embeddings.
liealg::MatrixLieAlgebra parse_subgroup(const symspace::SymmetricPair& pair,
                                        const std::string& spec);

action::GroupAction make_named_action(const std::string& space,
                                      const std::string& subgroup,
                                      const Options& opt);

VerificationReport verify_table(const std::string& table_id, const Options& opt);

// Check the Hermann slice table: carrier dimension and slice cohomogeneity at
// eK against the listed symmetric space G'/K'.
VerificationReport verify_hermann_slices(const Options& opt);

std::vector<std::string> fixture_ids();
Record run_fixture(const std::string& id, const Options& opt);
VerificationReport run_all_fixtures(const Options& opt);

std::string report_json(const VerificationReport& rep, const Options& opt);
std::string record_json(const Record& rec, const Options& opt);
void print_report(const VerificationReport& rep);

}  // namespace polar::harness
