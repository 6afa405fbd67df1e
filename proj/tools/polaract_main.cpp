// polaract: CLI for the polar-action verification engine.
#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "polar/harness.hpp"
#include "polar/rootsys.hpp"

using json = nlohmann::ordered_json;
using namespace polar;

namespace {

int report_exit(const harness::VerificationReport& rep, const harness::Options& opt,
                bool as_json) {
  if (as_json)
    std::cout << harness::report_json(rep, opt);
  else
    harness::print_report(rep);
  return rep.exit_code();
}

std::vector<long> parse_weight(const std::string& csv) {
  std::vector<long> w;
  std::string cur;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!cur.empty()) w.push_back(std::stol(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polaract: polar actions on compact symmetric spaces, verified"};
  app.require_subcommand(1);

  harness::Options opt;
  bool as_json = false;
  bool serial = false;
  std::string data_dir;
  app.add_option("--seed", opt.seed, "random seed (default 1)");
  app.add_option("--samples", opt.samples, "sample points per action (default 8)");
  app.add_option("--tol-accept", opt.tol.accept, "acceptance threshold (default 1e-6)");
  app.add_option("--tol-reject", opt.tol.reject, "rejection threshold (default 1e-3)");
  app.add_flag("--json", as_json, "machine-readable report");
  app.add_flag("--serial", serial, "disable the OpenMP kernel paths");
  app.add_option("--data", data_dir, "table data directory");

  auto* spaces = app.add_subcommand("spaces", "symmetric space catalog");
  auto* spaces_list = spaces->add_subcommand("list", "list spaces");
  int max_ambient = 16;
  spaces_list->add_option("--max-ambient", max_ambient, "realified ambient cap");

  std::string space, subgroup, sub_a, sub_b;
  auto add_action_opts = [&](CLI::App* cmd) {
    cmd->add_option("--space", space, "space id, e.g. BDI:3,4")->required();
    cmd->add_option("--subgroup", subgroup, "subgroup spec, e.g. block so2+so5")->required();
  };

  auto* check = app.add_subcommand("check-polar", "polarity criterion at sampled points");
  add_action_opts(check);
  bool at_origin = false;
  check->add_flag("--at-origin", at_origin, "use the base-point criterion");

  auto* cohom = app.add_subcommand("cohom", "cohomogeneity of an action");
  add_action_opts(cohom);

  auto* slice = app.add_subcommand("slice", "slice representation");
  add_action_opts(slice);
  std::string at = "origin";
  bool decompose = false;
  slice->add_option("--at", at, "origin|random");
  slice->add_flag("--decompose", decompose, "decompose into invariant modules");

  auto* orbits = app.add_subcommand("orbits-match", "orbit-equivalence evidence");
  orbits->add_option("--space", space)->required();
  orbits->add_option("--a", sub_a, "first subgroup")->required();
  orbits->add_option("--b", sub_b, "second subgroup")->required();

  auto* bds = app.add_subcommand("bds", "Borel-de Siebenthal subsystems");
  std::string rtype = "E6";
  int del_vertex = -1;
  bds->add_option("--type", rtype, "root system, e.g. E6 or F4")->required();
  bds->add_option("--delete", del_vertex, "extended-diagram vertex to delete (0..rank)");

  auto* weyl = app.add_subcommand("weyl-dim", "Weyl dimension formula");
  std::string wtype = "C3";
  std::string weight_csv;
  weyl->add_option("--type", wtype, "e.g. C3")->required();
  weyl->add_option("--weight", weight_csv, "Dynkin labels, e.g. 0,1,0")->required();

  auto* mrk = app.add_subcommand("mrk-slice", "root-level slice for maximal-rank pairs");
  std::string s_label, s2_label;
  mrk->add_option("--type", rtype)->required();
  mrk->add_option("--s", s_label, "first subsystem label, e.g. A5+A1")->required();
  mrk->add_option("--s2", s2_label, "second subsystem label, e.g. D5+T1")->required();

  auto* verify = app.add_subcommand("verify", "reproduce a paper table");
  std::string table = "T2";
  verify->add_option("--table", table, "T1..T6 or TH (Hermann slices)")->required();
  verify->add_option("--max-ambient", opt.max_ambient, "realified ambient cap");

  auto* fixture = app.add_subcommand("fixture", "named regression fixtures");
  auto* fx_run = fixture->add_subcommand("run", "run one fixture");
  std::string fixture_id;
  fx_run->add_option("id", fixture_id, "fixture id")->required();
  auto* fx_list = fixture->add_subcommand("list", "list fixture ids");
  auto* fx_all = fixture->add_subcommand("all", "run every fixture");

  CLI11_PARSE(app, argc, argv);

  if (serial) set_default_exec(Exec::Serial);
  if (!data_dir.empty()) tables::set_data_dir(data_dir);

  try {
    if (spaces_list->parsed()) {
      for (const auto& id : symspace::catalog(max_ambient)) {
        std::cout << symspace::space_label(id) << "\tdim=" << symspace::table_dim(id)
                  << "\trank=" << symspace::table_rank(id)
                  << "\tambient=" << symspace::realified_ambient(id) << "\n";
      }
      return 0;
    }
    if (check->parsed()) {
      action::GroupAction act = harness::make_named_action(space, subgroup, opt);
      const action::PolarityReport r = at_origin
                                           ? action::check_polar_at_origin(act, opt.tol)
                                           : action::check_polar(act, opt.tol);
      if (as_json) {
        json j;
        j["space"] = space;
        j["subgroup"] = subgroup;
        j["verdict"] = action::verdict_name(r.verdict);
        j["cohomogeneity"] = r.cohomogeneity;
        j["lie_triple_residual"] = r.lie_triple_residual;
        j["orthogonality_residual"] = r.orthogonality_residual;
        j["flatness_residual"] = r.flatness_residual;
        j["samples_used"] = r.samples_used;
        j["seed"] = r.seed;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << action::verdict_name(r.verdict) << " coh=" << r.cohomogeneity
                  << " lie=" << r.lie_triple_residual
                  << " orth=" << r.orthogonality_residual
                  << " flat=" << r.flatness_residual << "\n";
      }
      return r.verdict == action::Verdict::inconclusive ? 2 : 0;
    }
    if (cohom->parsed()) {
      action::GroupAction act = harness::make_named_action(space, subgroup, opt);
      const action::CohomResult r = action::cohomogeneity(act);
      if (as_json) {
        json j;
        j["space"] = space;
        j["subgroup"] = subgroup;
        j["cohomogeneity"] = r.value;
        j["conclusive"] = r.conclusive;
        j["orbit_dims"] = r.orbit_dims;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "cohomogeneity=" << r.value << (r.conclusive ? "" : " (inconclusive)")
                  << "\n";
      }
      return r.conclusive ? 0 : 2;
    }
    if (slice->parsed()) {
      action::GroupAction act = harness::make_named_action(space, subgroup, opt);
      Mat g = Mat::Identity(act.pair.ambient_n(), act.pair.ambient_n());
      if (at == "random") g = liealg::group_element(act.pair.g, mix_seed(opt.seed, 5), 2);
      const slicerep::LinearRep rep = slicerep::slice_representation(act, g);
      json j;
      j["space"] = space;
      j["subgroup"] = subgroup;
      j["at"] = at;
      j["isotropy_dim"] = rep.algebra.dim();
      j["carrier_dim"] = rep.carrier_dim();
      j["slice_cohomogeneity"] = slicerep::rep_cohomogeneity(rep, opt.seed);
      if (decompose) {
        const auto dec = slicerep::decompose_modules(rep, opt.seed);
        j["summand_dims"] = dec.dims;
        j["trivial_dim"] = dec.trivial_dim;
        j["commutant_dim"] = dec.commutant_dim;
        j["has_equivalent_pair"] = slicerep::has_equivalent_pair(rep, dec);
        j["conclusive"] = dec.conclusive;
      }
      if (as_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    }
    if (orbits->parsed()) {
      action::GroupAction a = harness::make_named_action(space, sub_a, opt);
      action::GroupAction b = harness::make_named_action(space, sub_b, opt);
      const auto r = action::orbits_match(a, b);
      if (as_json) {
        json j;
        j["space"] = space;
        j["a"] = sub_a;
        j["b"] = sub_b;
        j["match"] = r.match;
        j["coh_a"] = r.coh_a;
        j["coh_b"] = r.coh_b;
        j["max_angle_gap"] = r.max_angle_gap;
        j["samples"] = r.samples;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << (r.match ? "match" : "no-match") << " coh_a=" << r.coh_a
                  << " coh_b=" << r.coh_b << " gap=" << r.max_angle_gap << "\n";
      }
      return 0;
    }
    if (bds->parsed()) {
      const char t = rtype[0];
      const int rank = std::stoi(rtype.substr(1));
      const auto sys = rootsys::build_root_system(t, rank);
      if (del_vertex >= 0) {
        const auto s = rootsys::borel_de_siebenthal(sys, del_vertex);
        std::cout << s.label << "\troots=" << s.members.size() << "\n";
      } else {
        for (const auto& s : rootsys::bds_enumerate(sys))
          std::cout << s.label << "\troots=" << s.members.size() << "\n";
      }
      return 0;
    }
    if (weyl->parsed()) {
      const char t = wtype[0];
      const int rank = std::stoi(wtype.substr(1));
      std::cout << rootsys::weyl_dimension(t, rank, parse_weight(weight_csv)) << "\n";
      return 0;
    }
    if (mrk->parsed()) {
      const char t = rtype[0];
      const int rank = std::stoi(rtype.substr(1));
      const auto sys = rootsys::build_root_system(t, rank);
      const auto s = rootsys::subset_from_label(sys, s_label);
      const auto s2 = rootsys::subset_from_label(sys, s2_label);
      const auto r = rootsys::maximal_rank_slice(sys, s, s2);
      json j;
      j["type"] = rtype;
      j["s"] = s.label;
      j["s2"] = s2.label;
      j["isotropy_roots"] = r.isotropy_roots.size();
      j["slice_roots"] = r.slice_roots.size();
      j["isotropy_label"] = r.isotropy_label;
      j["isotropy_dim"] = r.isotropy_dim;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (verify->parsed()) {
      harness::VerificationReport rep;
      if (table == "TH")
        rep = harness::verify_hermann_slices(opt);
      else
        rep = harness::verify_table(table, opt);
      return report_exit(rep, opt, as_json);
    }
    if (fx_list->parsed()) {
      for (const auto& id : harness::fixture_ids()) std::cout << id << "\n";
      return 0;
    }
    if (fx_run->parsed()) {
      const harness::Record rec = harness::run_fixture(fixture_id, opt);
      harness::VerificationReport rep;
      rep.add(rec);
      return report_exit(rep, opt, as_json);
    }
    if (fx_all->parsed()) {
      const harness::VerificationReport rep = harness::run_all_fixtures(opt);
      return report_exit(rep, opt, as_json);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
