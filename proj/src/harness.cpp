#include "polar/harness.hpp"

#include <json.hpp>

#include <functional>
#include <iostream>
#include <sstream>

#include "polar/kernels.hpp"
#include "polar/rootsys.hpp"

namespace polar::harness {

using json = nlohmann::ordered_json;
using liealg::Family;
using liealg::MatrixLieAlgebra;
using liealg::Scalar;
using symspace::SpaceId;
using symspace::SpaceType;
using symspace::SymmetricPair;

void VerificationReport::add(Record r) {
  switch (r.status) {
    case Status::pass: ++passed; break;
    case Status::fail: ++failed; break;
    case Status::inconclusive: ++inconclusive; break;
    case Status::skipped: ++skipped; break;
  }
  records.push_back(std::move(r));
}

int VerificationReport::exit_code() const {
  if (failed > 0) return 1;
  if (inconclusive > 0) return 2;
  return 0;
}

// ---------------------------------------------------------------------------
// Subgroup DSL

namespace {

struct Item {
  std::string kind;  // so, su, u, sp, g2, spin7, spin8, spin9, adsu3, e
  int size = 0;      // structured coordinates consumed
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Item parse_item(const std::string& text) {
  static const std::vector<std::string> named = {"g2", "spin7", "spin8", "spin9", "adsu3"};
  for (const auto& n : named)
    if (text == n) return {n, 0};
  size_t i = 0;
  while (i < text.size() && isalpha(static_cast<unsigned char>(text[i]))) ++i;
  const std::string kind = text.substr(0, i);
  if (kind != "so" && kind != "su" && kind != "u" && kind != "sp" && kind != "e")
    throw Error("parse_subgroup: unknown item '" + text + "'");
  if (i == text.size()) throw Error("parse_subgroup: missing size in '" + text + "'");
  return {kind, std::stoi(text.substr(i))};
}

// Structured size an item occupies in the given ambient scalar.
int item_extent(const Item& it, Scalar amb) {
  if (it.kind == "g2") return 7;
  if (it.kind == "adsu3") return 8;
  if (it.kind == "spin7") return 8;
  if (it.kind == "spin8" || it.kind == "spin9") return 16;
  if (it.kind == "e") return it.size;
  switch (amb) {
    case Scalar::Real:
      if (it.kind == "so") return it.size;
      if (it.kind == "u" || it.kind == "su") return 2 * it.size;
      if (it.kind == "sp") return 4 * it.size;
      break;
    case Scalar::Complex:
      if (it.kind == "so" || it.kind == "u" || it.kind == "su") return it.size;
      if (it.kind == "sp") return 2 * it.size;
      break;
    case Scalar::Quaternion:
      if (it.kind == "so" || it.kind == "u" || it.kind == "su" || it.kind == "sp")
        return it.size;
      break;
  }
  throw Error("parse_subgroup: item '" + it.kind + "' not usable in this ambient");
}

// Local realified block for an item; empty vector for e-items.
std::vector<Mat> item_matrices(const Item& it, Scalar amb) {
  using liealg::build_classical;
  if (it.kind == "e") return {};
  if (it.kind == "g2") return liealg::g2_in_so7().matrices();
  if (it.kind == "spin7") return liealg::spin7_in_so8().matrices();
  if (it.kind == "spin8") return liealg::spin8_in_so16().matrices();
  if (it.kind == "spin9") return liealg::spin9_in_so16().matrices();
  if (it.kind == "adsu3") return liealg::adjoint_su3_in_so8().matrices();
  if (it.size == 0) return {};
  switch (amb) {
    case Scalar::Real:
      if (it.kind == "so") return it.size >= 2 ? build_classical(Family::so, it.size).matrices() : std::vector<Mat>{};
      if (it.kind == "u") return build_classical(Family::u, it.size).matrices();
      if (it.kind == "su") return it.size >= 2 ? build_classical(Family::su, it.size).matrices() : std::vector<Mat>{};
      if (it.kind == "sp") return build_classical(Family::sp, it.size).matrices();
      break;
    case Scalar::Complex:
      if (it.kind == "so") return it.size >= 2 ? liealg::orthogonal_in_unitary(it.size).matrices() : std::vector<Mat>{};
      if (it.kind == "u") return build_classical(Family::u, it.size).matrices();
      if (it.kind == "su") return it.size >= 2 ? build_classical(Family::su, it.size).matrices() : std::vector<Mat>{};
      if (it.kind == "sp") return liealg::symplectic_in_unitary(it.size).matrices();
      break;
    case Scalar::Quaternion: {
      if (it.kind == "sp") return build_classical(Family::sp, it.size).matrices();
      // complex (or real) entries inside quaternionic matrices
      std::vector<Mat> src;
      if (it.kind == "so") {
        if (it.size >= 2) src = build_classical(Family::so, it.size).matrices();
      } else if (it.kind == "u") {
        src = build_classical(Family::u, it.size).matrices();
      } else if (it.kind == "su") {
        if (it.size >= 2) src = build_classical(Family::su, it.size).matrices();
      }
      std::vector<Mat> out;
      for (const Mat& m : src) {
        liealg::QuatMat q = liealg::QuatMat::zero(it.size, it.size);
        if (it.kind == "so") {
          q.a = m;
        } else {
          for (int r = 0; r < it.size; ++r)
            for (int c = 0; c < it.size; ++c) {
              q.a(r, c) = m(2 * r, 2 * c);
              q.b(r, c) = m(2 * r + 1, 2 * c);
            }
        }
        out.push_back(liealg::realify_quaternion(q));
      }
      return out;
    }
  }
  throw Error("parse_subgroup: cannot build item '" + it.kind + "'");
}

int scalar_mult(Scalar s) {
  switch (s) {
    case Scalar::Real: return 1;
    case Scalar::Complex: return 2;
    case Scalar::Quaternion: return 4;
  }
  return 1;
}

MatrixLieAlgebra tensor_from_spec(const SymmetricPair& pair, const std::string& inner) {
  const auto parts = split(inner, ',');
  if (parts.size() != 2) throw Error("parse_subgroup: tensor needs two factors");
  const Item a = parse_item(parts[0]);
  const Item b = parse_item(parts[1]);
  auto build = [&](const Item& it) -> MatrixLieAlgebra {
    if (it.kind == "su") return liealg::build_classical(Family::su, it.size);
    if (it.kind == "so") return liealg::build_classical(Family::so, it.size);
    if (it.kind == "sp") return liealg::build_classical(Family::sp, it.size);
    throw Error("parse_subgroup: tensor factor must be so/su/sp");
  };
  liealg::EmbeddingSpec spec;
  spec.kind = liealg::EmbeddingSpec::Kind::TensorProduct;
  MatrixLieAlgebra alg = liealg::embed(spec, {build(a), build(b)});
  if (alg.ambient_n != pair.ambient_n())
    throw Error("parse_subgroup: tensor ambient " + std::to_string(alg.ambient_n) +
                " does not fill pair ambient " + std::to_string(pair.ambient_n()));
  return alg;
}

}  // namespace

MatrixLieAlgebra parse_subgroup(const SymmetricPair& pair, const std::string& spec_in) {
  std::string spec = spec_in;
  if (spec == "k" || spec == "isotropy")
    return liealg::algebra_from_subspace(pair.k, pair.ambient_n(), pair.label + ".k");
  if (spec == "full" || spec == "g") return pair.g;
  if (spec.rfind("tensor(", 0) == 0 && spec.back() == ')')
    return tensor_from_spec(pair, spec.substr(7, spec.size() - 8));

  bool det_one = false;
  if (spec.rfind("s:", 0) == 0) {
    det_one = true;
    spec = spec.substr(2);
  }
  const Scalar amb = pair.g.scalar;
  const int mult = scalar_mult(amb);
  const int n_total = pair.ambient_n();
  std::vector<Mat> span;
  int real_offset = 0;
  for (const std::string& tok : split(spec, '+')) {
    const Item it = parse_item(tok);
    // item_extent is in structured units; blocks occupy mult reals per unit
    const int real_size = item_extent(it, amb) * mult;
    for (const Mat& m : item_matrices(it, amb)) {
      if (m.rows() != real_size)
        throw Error("parse_subgroup: item block size mismatch for '" + tok + "'");
      Mat big = Mat::Zero(n_total, n_total);
      big.block(real_offset, real_offset, real_size, real_size) = m;
      span.push_back(big);
    }
    real_offset += real_size;
  }
  if (real_offset != n_total)
    throw Error("parse_subgroup: items fill " + std::to_string(real_offset) +
                " coordinates of " + std::to_string(n_total) + " in '" + spec_in + "'");
  if (span.empty())
    return liealg::algebra_from_subspace(
        linalg::Subspace::zero(static_cast<long>(n_total) * n_total), n_total, spec_in);
  MatrixLieAlgebra alg =
      liealg::algebra_from_span(span, n_total, spec_in, Scalar::Real, n_total);
  if (det_one) {
    if (amb == Scalar::Real)
      throw Error("parse_subgroup: s: prefix needs a complex or quaternionic ambient");
    Mat i_identity;
    if (amb == Scalar::Complex) {
      i_identity = liealg::complex_structure(n_total / 2);
    } else {
      liealg::QuatMat q = liealg::QuatMat::zero(n_total / 4, n_total / 4);
      q.b = Mat::Identity(n_total / 4, n_total / 4);
      i_identity = liealg::realify_quaternion(q);
    }
    const Vec dir = vec_rowmajor(i_identity);
    const Vec proj = linalg::project(dir, alg.basis);
    if (proj.norm() > 1e-9) {
      const int before = alg.dim();
      linalg::Subspace cut = liealg::remove_direction(alg.basis, proj);
      if (cut.dim() != before - 1)
        throw Error("parse_subgroup: traceless slice failed for '" + spec_in + "'");
      alg = liealg::algebra_from_subspace(cut, n_total, spec_in);
    }
  }
  return alg;
}

action::GroupAction make_named_action(const std::string& space,
                                      const std::string& subgroup,
                                      const Options& opt) {
  SymmetricPair pair = symspace::build_symmetric_pair(symspace::parse_space(space));
  MatrixLieAlgebra h = parse_subgroup(pair, subgroup);
  return action::make_action(std::move(pair), std::move(h), opt.seed, opt.samples);
}

// ---------------------------------------------------------------------------
// Table verification

namespace {

std::string params_suffix(const std::map<std::string, long>& env) {
  std::string out;
  for (const auto& [k, v] : env) out += ":" + k + std::to_string(v);
  return out;
}

Record check_cohomogeneity_instance(const std::string& id, const std::string& h_spec,
                                    const std::string& space_spec, long expected,
                                    const Options& opt) {
  Record rec;
  rec.id = id;
  rec.seed = opt.seed;
  rec.expected = "coh=" + std::to_string(expected);
  try {
    action::GroupAction act = make_named_action(space_spec, h_spec, opt);
    const action::CohomResult coh = action::cohomogeneity(act);
    rec.measured = "coh=" + std::to_string(coh.value);
    if (!coh.conclusive) {
      rec.status = Status::inconclusive;
      rec.detail = "max orbit dimension not attained twice";
    } else {
      rec.status = coh.value == expected ? Status::pass : Status::fail;
    }
  } catch (const Inconclusive& e) {
    rec.status = Status::inconclusive;
    rec.detail = e.what();
  }
  return rec;
}

VerificationReport verify_t2_like(const tables::Table& table, const std::string& prefix,
                                  const Options& opt) {
  VerificationReport rep;
  for (const auto& row : table.rows) {
    if (row.fields.at("model") != "classical") {
      Record rec;
      rec.id = prefix + ":" + row.key;
      rec.status = Status::skipped;
      rec.detail = "skipped: out-of-scope model (" + row.fields.at("model") + ")";
      rep.add(rec);
      continue;
    }
    for (const auto& env : tables::enumerate_params(row)) {
      const std::string space = tables::substitute(row.fields.at("space"), env);
      const SpaceId sid = symspace::parse_space(space);
      if (symspace::realified_ambient(sid) > opt.max_ambient) continue;
      if (symspace::table_rank(sid) < 1 || symspace::table_dim(sid) < 1) continue;
      const std::string h = tables::substitute(row.fields.at("h"), env);
      const long expected = tables::eval_expr(row.fields.at("coh"), env);
      rep.add(check_cohomogeneity_instance(prefix + ":" + row.key + params_suffix(env),
                                           h, space, expected, opt));
    }
  }
  return rep;
}

VerificationReport verify_t1(const tables::Table& table, const Options& opt) {
  VerificationReport rep;
  for (const auto& row : table.rows) {
    if (row.fields.at("model") != "classical") {
      Record rec;
      rec.id = "T1:" + row.key;
      rec.status = Status::skipped;
      rec.detail = "skipped: out-of-scope model (" + row.fields.at("model") + ")";
      rep.add(rec);
      continue;
    }
    for (const auto& env : tables::enumerate_params(row)) {
      const std::string space = tables::substitute(row.fields.at("space"), env);
      const SpaceId sid = symspace::parse_space(space);
      if (symspace::realified_ambient(sid) > opt.max_ambient) continue;
      if (symspace::table_rank(sid) < 1 || symspace::table_dim(sid) < 1) continue;
      Record rec;
      rec.id = "T1:" + row.key + params_suffix(env);
      rec.seed = opt.seed;
      rec.expected = "orbits_match=true";
      try {
        action::GroupAction sub = make_named_action(
            space, tables::substitute(row.fields.at("sub"), env), opt);
        action::GroupAction full = make_named_action(
            space, tables::substitute(row.fields.at("full"), env), opt);
        const action::OrbitsMatchResult m = action::orbits_match(sub, full);
        std::ostringstream os;
        os << "orbits_match=" << (m.match ? "true" : "false") << " coh_a=" << m.coh_a
           << " coh_b=" << m.coh_b << " gap=" << m.max_angle_gap;
        rec.measured = os.str();
        rec.status = m.match ? Status::pass : Status::fail;
      } catch (const Inconclusive& e) {
        rec.status = Status::inconclusive;
        rec.detail = e.what();
      }
      rep.add(rec);
    }
  }
  return rep;
}

VerificationReport verify_t3(const tables::Table& table, const Options& opt) {
  VerificationReport rep;
  for (const auto& row : table.rows) {
    const std::string root_type = row.fields.at("root");
    for (const auto& env : tables::enumerate_params(row)) {
      Record rec;
      rec.id = "T3:" + row.key + params_suffix(env);
      rec.seed = opt.seed;
      const long rank = tables::eval_expr(row.fields.at("rank"), env);
      const long dim = tables::eval_expr(row.fields.at("dim"), env);
      const long gdim = tables::eval_expr(row.fields.at("gdim"), env);
      const long kdim = tables::eval_expr(row.fields.at("kdim"), env);
      rec.expected = "dim=" + std::to_string(dim) + " rank=" + std::to_string(rank);
      long gdim_root = gdim;
      if (root_type != "-") {
        const char t = root_type[0];
        const int r = std::stoi(root_type.substr(1));
        gdim_root = rootsys::dim_of_simple(t, r);
      }
      const bool ok = (dim == gdim - kdim) && (gdim == gdim_root) && rank >= 1;
      rec.measured = "gdim-kdim=" + std::to_string(gdim - kdim) +
                     " gdim_root=" + std::to_string(gdim_root);
      rec.status = ok ? Status::pass : Status::fail;
      rep.add(rec);
    }
  }
  return rep;
}

VerificationReport verify_t6(const tables::Table& table, const Options& opt) {
  VerificationReport rep;
  for (const auto& row : table.rows) {
    Record rec;
    rec.id = "T6:" + row.key;
    rec.seed = opt.seed;
    const char type = row.fields.at("type")[0];
    const int rank = std::stoi(row.fields.at("rank"));
    std::vector<long> weight;
    for (const auto& part : split(row.fields.at("weight"), ','))
      weight.push_back(std::stol(part));
    const unsigned long long expected = std::stoull(row.fields.at("degree"));
    rec.expected = "degree=" + std::to_string(expected);
    const unsigned long long got = rootsys::weyl_dimension(type, rank, weight);
    rec.measured = "degree=" + std::to_string(got);
    rec.status = got == expected ? Status::pass : Status::fail;
    rep.add(rec);
  }
  return rep;
}

}  // namespace

VerificationReport verify_table(const std::string& table_id, const Options& opt) {
  const std::string dir = tables::data_dir();
  if (table_id == "T1") return verify_t1(tables::load_table(dir + "/t1.tsv"), opt);
  if (table_id == "T2")
    return verify_t2_like(tables::load_table(dir + "/t2.tsv"), "T2", opt);
  if (table_id == "T3") return verify_t3(tables::load_table(dir + "/t3.tsv"), opt);
  if (table_id == "T4")
    return verify_t2_like(tables::load_table(dir + "/t4.tsv"), "T4", opt);
  if (table_id == "T5")
    return verify_t2_like(tables::load_table(dir + "/t5.tsv"), "T5", opt);
  if (table_id == "T6") return verify_t6(tables::load_table(dir + "/t6.tsv"), opt);
  throw Error("verify_table: unknown table " + table_id);
}

namespace {

// Dim / rank of the slice entry's symmetric space.
std::pair<long, long> slice_space_dims(const std::string& kind, long p, long q) {
  if (kind == "group-su") return {p * p - 1, p - 1};
  SpaceId id;
  if (kind == "AIII") id.type = SpaceType::AIII;
  else if (kind == "BDI") id.type = SpaceType::BDI;
  else if (kind == "CII") id.type = SpaceType::CII;
  else if (kind == "DIII") id.type = SpaceType::DIII;
  else throw Error("slice_space_dims: unknown kind " + kind);
  id.p = static_cast<int>(p);
  id.q = static_cast<int>(q);
  if ((id.type == SpaceType::AIII || id.type == SpaceType::BDI ||
       id.type == SpaceType::CII) &&
      (p == 0 || q == 0))
    return {0, 0};
  return {symspace::table_dim(id), symspace::table_rank(id)};
}

}  // namespace

VerificationReport verify_hermann_slices(const Options& opt) {
  VerificationReport rep;
  const tables::Table table = tables::load_table(tables::data_dir() + "/th_slicerep.tsv");
  for (const auto& row : table.rows) {
    for (const auto& env : tables::enumerate_params(row)) {
      const std::string space = tables::substitute(row.fields.at("space"), env);
      const SpaceId sid = symspace::parse_space(space);
      if (symspace::realified_ambient(sid) > opt.max_ambient) continue;
      if (symspace::table_rank(sid) < 1 || symspace::table_dim(sid) < 1) continue;
      Record rec;
      rec.id = "TH:" + row.key + params_suffix(env);
      rec.seed = opt.seed;
      const long sp = tables::eval_expr(row.fields.at("slice_p"), env);
      const long sq = tables::eval_expr(row.fields.at("slice_q"), env);
      const auto [dim, rank] = slice_space_dims(row.fields.at("slice_kind"), sp, sq);
      rec.expected = "carrier=" + std::to_string(dim) + " slice_coh=" + std::to_string(rank);
      try {
        action::GroupAction act = make_named_action(
            space, tables::substitute(row.fields.at("h"), env), opt);
        const Mat id_elt = Mat::Identity(act.pair.ambient_n(), act.pair.ambient_n());
        const slicerep::LinearRep srep = slicerep::slice_representation(act, id_elt);
        const int scoh = slicerep::rep_cohomogeneity(srep, opt.seed);
        rec.measured = "carrier=" + std::to_string(srep.carrier_dim()) +
                       " slice_coh=" + std::to_string(scoh);
        rec.status = (srep.carrier_dim() == dim && scoh == rank) ? Status::pass
                                                                 : Status::fail;
      } catch (const Inconclusive& e) {
        rec.status = Status::inconclusive;
        rec.detail = e.what();
      }
      rep.add(rec);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

using FixtureFn = std::function<Record(const Options&)>;

Record polar_fixture(const std::string& id, const std::string& space,
                     const std::string& subgroup, action::Verdict expect_verdict,
                     int expect_coh, const Options& opt) {
  Record rec;
  rec.id = id;
  rec.seed = opt.seed;
  std::ostringstream eos;
  eos << "verdict=" << action::verdict_name(expect_verdict);
  if (expect_coh >= 0) eos << " coh=" << expect_coh;
  rec.expected = eos.str();
  action::GroupAction act = make_named_action(space, subgroup, opt);
  const action::PolarityReport r = action::check_polar(act, opt.tol);
  std::ostringstream os;
  os << "verdict=" << action::verdict_name(r.verdict) << " coh=" << r.cohomogeneity
     << " lie=" << r.lie_triple_residual << " orth=" << r.orthogonality_residual
     << " flat=" << r.flatness_residual << " min_violation=" << r.min_violation;
  rec.measured = os.str();
  bool ok = r.verdict == expect_verdict;
  if (expect_coh >= 0) ok = ok && r.cohomogeneity == expect_coh;
  rec.status = ok ? Status::pass
                  : (r.verdict == action::Verdict::inconclusive ? Status::inconclusive
                                                                : Status::fail);
  return rec;
}

Record cohom_fixture(const std::string& id, const std::string& space,
                     const std::string& subgroup, int expected, const Options& opt) {
  return check_cohomogeneity_instance(id, subgroup, space, expected, opt);
}

Mat second_involution(const SymmetricPair& ambient_pair, const std::string& space) {
  const SymmetricPair other = symspace::build_symmetric_pair(symspace::parse_space(space));
  if (other.ambient_n() != ambient_pair.ambient_n())
    throw Error("second_involution: ambient mismatch");
  return other.theta;
}

const std::map<std::string, FixtureFn>& registry() {
  static const std::map<std::string, FixtureFn> reg = [] {
    std::map<std::string, FixtureFn> m;
    auto polar = [](std::string space, std::string sub, action::Verdict v, int coh) {
      return [=](const Options& opt) {
        return polar_fixture("", space, sub, v, coh, opt);
      };
    };
    using action::Verdict;

    // Table 2 Hermann rows pinned by the acceptance criteria.
    m["hermann-ai2-n3"] = polar("AII:3", "so6", Verdict::polar_hyperpolar, 2);
    m["hermann-ai3-n5k2"] = polar("AIII:2,3", "so5", Verdict::polar_hyperpolar, 2);
    m["hermann-a23-n3k2"] = polar("AIII:2,4", "sp3", Verdict::polar_hyperpolar, 1);
    m["hermann-a33-n5k1l2"] = polar("AIII:2,3", "s:u1+u4", Verdict::polar_hyperpolar, 1);
    m["hermann-bdi-n8k2l3"] = polar("BDI:3,5", "so2+so6", Verdict::polar_hyperpolar, 2);
    m["hermann-ci2-n3k1"] = polar("CII:1,2", "u3", Verdict::polar_hyperpolar, 1);
    m["hermann-cii-n4k1l2"] = polar("CII:2,2", "sp1+sp3", Verdict::polar_hyperpolar, 1);
    m["hermann-di3-n4k2"] = polar("DIII:4", "so2+so6", Verdict::polar_hyperpolar, 1);
    m["hermann-d33-n2"] = polar("DIII:4'", "u4", Verdict::polar_hyperpolar, 1);

    // Non-polarity reproductions.
    m["tensstruct-su3xsu2-aii3"] =
        polar("AII:3", "tensor(su3,su2)", Verdict::non_polar, -1);
    m["nonpolar-su3-ai4"] = polar("AI:4", "su3+su1", Verdict::non_polar, -1);

    // Hermann action used for the misaligned-block orbit fixtures.
    m["cohone-g2-bdi34"] = [](const Options& opt) {
      return cohom_fixture("", "BDI:3,4", "g2", 1, opt);
    };
    m["transitive-g2-bdi25"] = [](const Options& opt) {
      return cohom_fixture("", "BDI:2,5", "g2", 0, opt);
    };
    m["transitive-so5-diii3"] = [](const Options& opt) {
      return cohom_fixture("", "DIII:3", "so5+e1", 0, opt);
    };
    m["transitive-su3u1-aii2"] = [](const Options& opt) {
      return cohom_fixture("", "AII:2", "s:u3+u1", 0, opt);
    };
    m["isotropy-rank-bdi25"] = [](const Options& opt) {
      return cohom_fixture("", "BDI:2,5", "k", 2, opt);
    };

    m["orbitmatch-su1su3-aiii22"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "orbits_match=true";
      action::GroupAction a = make_named_action("AIII:2,2", "su1+su3", opt);
      action::GroupAction b = make_named_action("AIII:2,2", "s:u1+u3", opt);
      const auto r = action::orbits_match(a, b);
      std::ostringstream os;
      os << "orbits_match=" << (r.match ? "true" : "false") << " coh_a=" << r.coh_a
         << " coh_b=" << r.coh_b << " gap=" << r.max_angle_gap;
      rec.measured = os.str();
      rec.status = r.match ? Status::pass : Status::fail;
      return rec;
    };
    m["orbitmatch-g2so2-bdi27"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "orbits_match=true";
      action::GroupAction a = make_named_action("BDI:2,7", "g2+so2", opt);
      action::GroupAction b = make_named_action("BDI:2,7", "so7+so2", opt);
      const auto r = action::orbits_match(a, b);
      std::ostringstream os;
      os << "orbits_match=" << (r.match ? "true" : "false") << " coh_a=" << r.coh_a
         << " coh_b=" << r.coh_b << " gap=" << r.max_angle_gap;
      rec.measured = os.str();
      rec.status = r.match ? Status::pass : Status::fail;
      return rec;
    };

    // Module decomposition / spin fixtures.
    m["spin8-tensor-56"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "summands={8,56} x3 seeds";
      const SymmetricPair pair =
          symspace::build_symmetric_pair(symspace::parse_space("BDI:8,8"));
      const MatrixLieAlgebra spin8 = liealg::spin8_in_so16();
      const slicerep::LinearRep rep = slicerep::isotropy_representation(pair, spin8);
      bool ok = true;
      std::ostringstream os;
      for (uint64_t s = 0; s < 3; ++s) {
        const auto dec = slicerep::decompose_modules(rep, mix_seed(opt.seed, s));
        os << "seed" << s << "={";
        for (size_t i = 0; i < dec.dims.size(); ++i)
          os << (i ? "," : "") << dec.dims[i];
        os << "} ";
        ok = ok && dec.conclusive && dec.dims == std::vector<int>{56, 8} &&
             dec.trivial_dim == 0;
      }
      rec.measured = os.str();
      rec.status = ok ? Status::pass : Status::fail;
      return rec;
    };
    m["spin9-slice-g8r16"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "carrier=56";
      action::GroupAction act = make_named_action("BDI:8,8", "spin9", opt);
      const Mat id_elt = Mat::Identity(16, 16);
      const slicerep::LinearRep rep = slicerep::slice_representation(act, id_elt);
      rec.measured = "carrier=" + std::to_string(rep.carrier_dim());
      rec.status = rep.carrier_dim() == 56 ? Status::pass : Status::fail;
      return rec;
    };
    m["spin9-isotropy-spin8"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "isotropy_dim=28";
      action::GroupAction act = make_named_action("BDI:8,8", "spin9", opt);
      const auto iso = slicerep::isotropy_subalgebra(act, Mat::Identity(16, 16));
      rec.measured = "isotropy_dim=" + std::to_string(iso.dim());
      rec.status = iso.dim() == 28 ? Status::pass : Status::fail;
      return rec;
    };
    m["equivpair-su2-adj2"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "two 3-dim summands, commutant>=4, equivalent_pair=true";
      MatrixLieAlgebra su2 = liealg::build_classical(Family::su, 2);
      std::vector<Mat> act;
      for (int i = 0; i < su2.dim(); ++i) {
        const Mat x = su2.matrix(i);
        Mat ad(3, 3);
        for (int b = 0; b < 3; ++b)
          ad.col(b) = su2.basis.basis.transpose() * vec_rowmajor(bracket(x, su2.matrix(b)));
        Mat dbl = Mat::Zero(6, 6);
        dbl.topLeftCorner(3, 3) = ad;
        dbl.bottomRightCorner(3, 3) = ad;
        act.push_back(dbl);
      }
      const slicerep::LinearRep rep = slicerep::make_rep(su2, act);
      const auto dec = slicerep::decompose_modules(rep, opt.seed);
      const bool pair_found = slicerep::has_equivalent_pair(rep, dec);
      std::ostringstream os;
      os << "dims={";
      for (size_t i = 0; i < dec.dims.size(); ++i) os << (i ? "," : "") << dec.dims[i];
      os << "} commutant=" << dec.commutant_dim << " equivalent_pair="
         << (pair_found ? "true" : "false");
      rec.measured = os.str();
      rec.status = (dec.dims == std::vector<int>{3, 3} && dec.commutant_dim >= 4 &&
                    pair_found)
                       ? Status::pass
                       : Status::fail;
      return rec;
    };

    // Origin-criterion fixtures.
    m["origin-isotropy-ci3"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "verdict=polar_hyperpolar (fixed origin, maximal abelian)";
      action::GroupAction act = make_named_action("CI:3", "k", opt);
      const auto r = action::check_polar_at_origin(act, opt.tol);
      rec.measured = "verdict=" + action::verdict_name(r.verdict) +
                     " coh=" + std::to_string(r.cohomogeneity);
      rec.status = r.verdict == action::Verdict::polar_hyperpolar ? Status::pass
                                                                  : Status::fail;
      return rec;
    };
    m["origin-conjugated-ci3"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "verdict=polar_hyperpolar (regular origin)";
      SymmetricPair pair = symspace::build_symmetric_pair(symspace::parse_space("CI:3"));
      MatrixLieAlgebra k = liealg::algebra_from_subspace(pair.k, pair.ambient_n(), "k");
      const Mat g0 = liealg::group_element(pair.g, mix_seed(opt.seed, 0x0919), 2);
      MatrixLieAlgebra h = liealg::algebra_from_subspace(
          liealg::adjoint_transport(g0, pair.k, pair.ambient_n()), pair.ambient_n(),
          "Ad(g)k");
      action::GroupAction act =
          action::make_action(std::move(pair), std::move(h), opt.seed, opt.samples);
      const auto r = action::check_polar_at_origin(act, opt.tol);
      rec.measured = "verdict=" + action::verdict_name(r.verdict) +
                     " coh=" + std::to_string(r.cohomogeneity);
      rec.status = r.verdict == action::Verdict::polar_hyperpolar ? Status::pass
                                                                  : Status::fail;
      return rec;
    };

    // Commuting involutions => totally geodesic orbit (Lie triple system).
    m["comminvol-so-blocks"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "lie_triple=true residual<1e-8 (both cases)";
      // SO(5) x SO(1) and SO(3) x SO(3) inside SO(6)
      SymmetricPair pair = symspace::build_symmetric_pair(symspace::parse_space("BDI:3,3"));
      MatrixLieAlgebra h1 = parse_subgroup(pair, "so5+e1");
      const Mat tau = second_involution(pair, "BDI:5,1");
      const auto r1 = action::commuting_involution_orbit(pair, h1, tau);
      // Sp(2) x Sp(2) and Sp(3) x Sp(1) inside Sp(4)
      SymmetricPair pair2 = symspace::build_symmetric_pair(symspace::parse_space("CII:2,2"));
      MatrixLieAlgebra h2 = parse_subgroup(pair2, "sp3+sp1");
      const Mat tau2 = second_involution(pair2, "CII:3,1");
      const auto r2 = action::commuting_involution_orbit(pair2, h2, tau2);
      std::ostringstream os;
      os << "case1: dim=" << r1.tangent.dim() << " res=" << r1.residual
         << "; case2: dim=" << r2.tangent.dim() << " res=" << r2.residual;
      rec.measured = os.str();
      rec.status = (r1.lie_triple && r1.residual < 1e-8 && r2.lie_triple &&
                    r2.residual < 1e-8 && r1.tangent.dim() > 0 && r2.tangent.dim() > 0)
                       ? Status::pass
                       : Status::fail;
      return rec;
    };

    // Root-level fixtures.
    m["bds-f4"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "{A2+A2,B4,C3+A1}";
      const auto sys = rootsys::build_root_system('F', 4);
      std::string got;
      for (const auto& s : rootsys::bds_enumerate(sys)) {
        if (!got.empty()) got += ",";
        got += s.label;
      }
      rec.measured = "{" + got + "}";
      rec.status = got == "A2+A2,B4,C3+A1" ? Status::pass : Status::fail;
      return rec;
    };
    m["bds-g2"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "{A1+A1,A2}";
      const auto sys = rootsys::build_root_system('G', 2);
      std::string got;
      for (const auto& s : rootsys::bds_enumerate(sys)) {
        if (!got.empty()) got += ",";
        got += s.label;
      }
      rec.measured = "{" + got + "}";
      rec.status = got == "A1+A1,A2" ? Status::pass : Status::fail;
      return rec;
    };
    m["bds-e6-vertex3"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "A2+A2+A2";
      const auto sys = rootsys::build_root_system('E', 6);
      const auto s = rootsys::borel_de_siebenthal(sys, 3);
      rec.measured = s.label;
      rec.status = s.label == "A2+A2+A2" ? Status::pass : Status::fail;
      return rec;
    };
    m["mrk-slice-e6"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "slice=16 isotropy_dim=22";
      const auto sys = rootsys::build_root_system('E', 6);
      const auto s = rootsys::subset_from_label(sys, "A5+A1");
      const auto s2 = rootsys::subset_from_label(sys, "D5+T1");
      const auto r = rootsys::maximal_rank_slice(sys, s, s2);
      std::ostringstream os;
      os << "slice=" << r.slice_roots.size() << " isotropy_dim=" << r.isotropy_dim
         << " isotropy=" << r.isotropy_label;
      rec.measured = os.str();
      rec.status = (r.slice_roots.size() == 16 && r.isotropy_dim == 22) ? Status::pass
                                                                        : Status::fail;
      return rec;
    };
    m["mrk-slice-f4-b4"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "slice=16";
      const auto sys = rootsys::build_root_system('F', 4);
      const auto b4 = rootsys::subset_from_label(sys, "B4");
      const auto r = rootsys::maximal_rank_slice(sys, b4, b4);
      rec.measured = "slice=" + std::to_string(r.slice_roots.size());
      rec.status = r.slice_roots.size() == 16 ? Status::pass : Status::fail;
      return rec;
    };
    m["weyl-table6"] = [](const Options& opt) {
      VerificationReport rep = verify_table("T6", opt);
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "6/6 exact";
      rec.measured = std::to_string(rep.passed) + "/" +
                     std::to_string(rep.records.size()) + " exact";
      rec.status = (rep.failed == 0 && rep.passed == 6) ? Status::pass : Status::fail;
      return rec;
    };

    // Dimension audits.
    m["audit-g3r12"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "grassmann_real_2n-9 required=15";
      action::GroupAction act = make_named_action("BDI:3,9", "so3+so9", opt);
      const auto audit = action::dimension_audit(act);
      std::string got = "-";
      for (const auto& c : audit.checks)
        if (c.name == "grassmann_real_2n-9") got = std::to_string(c.required);
      rec.measured = "required=" + got;
      rec.status = got == "15" ? Status::pass : Status::fail;
      return rec;
    };
    m["audit-g2c5"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "grassmann_complex_3n-7 required=8";
      action::GroupAction act = make_named_action("AIII:2,3", "s:u2+u3", opt);
      const auto audit = action::dimension_audit(act);
      std::string got = "-";
      for (const auto& c : audit.checks)
        if (c.name == "grassmann_complex_3n-7") got = std::to_string(c.required);
      rec.measured = "required=" + got;
      rec.status = got == "8" ? Status::pass : Status::fail;
      return rec;
    };
    m["audit-ci3-kaehler"] = [](const Options& opt) {
      Record rec;
      rec.id = "";
      rec.seed = opt.seed;
      rec.expected = "kaehler bound present, coh<=rk(H), no violation";
      action::GroupAction act = make_named_action("CI:3", "k", opt);
      const auto audit = action::dimension_audit(act);
      bool found = false, ok = false;
      for (const auto& c : audit.checks)
        if (c.name == "kaehler_coh_le_rank_h") {
          found = true;
          ok = !c.violated;
        }
      rec.measured = std::string("found=") + (found ? "true" : "false") +
                     " violated=" + (ok ? "false" : "true");
      rec.status = (found && ok) ? Status::pass : Status::fail;
      return rec;
    };

    return m;
  }();
  return reg;
}

}  // namespace

std::vector<std::string> fixture_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : registry()) ids.push_back(id);
  return ids;
}

Record run_fixture(const std::string& id, const Options& opt) {
  const auto& reg = registry();
  const auto it = reg.find(id);
  if (it == reg.end()) throw Error("run_fixture: unknown fixture " + id);
  Record rec = it->second(opt);
  rec.id = id;
  return rec;
}

VerificationReport run_all_fixtures(const Options& opt) {
  VerificationReport rep;
  for (const auto& id : fixture_ids()) rep.add(run_fixture(id, opt));
  return rep;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
    case Status::skipped: return "skipped";
  }
  return "?";
}

json record_to_json(const Record& rec) {
  json j;
  j["id"] = rec.id;
  j["status"] = status_name(rec.status);
  j["expected"] = rec.expected;
  j["measured"] = rec.measured;
  j["detail"] = rec.detail;
  j["seed"] = rec.seed;
  return j;
}

}  // namespace

std::string record_json(const Record& rec, const Options& opt) {
  json j;
  j["schema"] = 1;
  j["seed"] = opt.seed;
  j["tol_accept"] = opt.tol.accept;
  j["tol_reject"] = opt.tol.reject;
  j["fixtures"] = json::array({record_to_json(rec)});
  json s;
  s["pass"] = rec.status == Status::pass ? 1 : 0;
  s["fail"] = rec.status == Status::fail ? 1 : 0;
  s["inconclusive"] = rec.status == Status::inconclusive ? 1 : 0;
  s["skipped"] = rec.status == Status::skipped ? 1 : 0;
  j["summary"] = s;
  return j.dump(2) + "\n";
}

std::string report_json(const VerificationReport& rep, const Options& opt) {
  json j;
  j["schema"] = 1;
  j["seed"] = opt.seed;
  j["tol_accept"] = opt.tol.accept;
  j["tol_reject"] = opt.tol.reject;
  json fixtures = json::array();
  std::vector<const Record*> ordered;
  for (const auto& r : rep.records) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Record* a, const Record* b) { return a->id < b->id; });
  for (const Record* r : ordered) fixtures.push_back(record_to_json(*r));
  j["fixtures"] = fixtures;
  json s;
  s["pass"] = rep.passed;
  s["fail"] = rep.failed;
  s["inconclusive"] = rep.inconclusive;
  s["skipped"] = rep.skipped;
  j["summary"] = s;
  return j.dump(2) + "\n";
}

void print_report(const VerificationReport& rep) {
  for (const auto& r : rep.records) {
    std::cout << status_name(r.status) << "\t" << r.id;
    if (!r.measured.empty()) std::cout << "\t" << r.measured;
    if (!r.detail.empty()) std::cout << "\t" << r.detail;
    std::cout << "\n";
  }
  std::cout << "summary: pass=" << rep.passed << " fail=" << rep.failed
            << " inconclusive=" << rep.inconclusive << " skipped=" << rep.skipped
            << "\n";
}

}  // namespace polar::harness
