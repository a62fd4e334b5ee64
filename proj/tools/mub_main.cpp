#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mub/galois.hpp"
#include "mub/json_io.hpp"
#include "mub/separability.hpp"
#include "mub/tomography.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

// Dense materialization (projections, bases, tomography) is capped; class
// construction alone scales further.
constexpr long kDenseCap = 64;

struct Config {
  long p = 0;
  long n = 1;
  std::vector<long> poly;
  std::optional<long> D;
  double tol = 1e-9;
  std::string format = "json";
  std::string out;
  std::string in;
  std::uint64_t seed = 0;
  long long shots = 0;
  bool no_matrices = false;
  bool mixed = false;
};

void add_common(CLI::App* cmd, Config& cfg, bool needs_pn) {
  auto* p = cmd->add_option("--p", cfg.p, "prime p");
  auto* n = cmd->add_option("--n", cfg.n, "extension degree n (d = p^n)");
  if (needs_pn) p->required();
  (void)n;
  cmd->add_option("--poly", cfg.poly, "defining polynomial c0,c1,...,cn (monic, irreducible)")->delimiter(',');
  cmd->add_option("--D", cfg.D, "quadratic nonresidue for the explicit p^2 construction");
  cmd->add_option("--tol", cfg.tol, "verification tolerance");
  cmd->add_option("--format", cfg.format, "output format: json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", cfg.out, "output path (default stdout)");
  cmd->add_option("--seed", cfg.seed, "PRNG seed");
  cmd->add_option("--shots", cfg.shots, "sampled measurement shots (0 = exact only)");
  cmd->add_flag("--no-matrices", cfg.no_matrices, "omit projection matrices from dumps");
}

void check_config(const Config& cfg) {
  if (!mub::is_prime(cfg.p)) throw std::invalid_argument(std::to_string(cfg.p) + " is not prime");
  if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
  long d = 1;
  for (long i = 0; i < cfg.n; ++i) {
    d *= cfg.p;
    if (d > 4096) throw std::invalid_argument("p^n exceeds the 4096 guard");
  }
  if (!(cfg.tol > 0)) throw std::invalid_argument("tol must be positive");
}

mub::MubFamily build_family(const Config& cfg) {
  if (!cfg.poly.empty()) {
    auto ctx = mub::FieldContext::create(mub::ZpPolynomial{cfg.p, cfg.poly});
    if (ctx->n() != cfg.n) throw std::invalid_argument("--poly degree does not match --n");
    return mub::classes_general(ctx);
  }
  if (cfg.D) return mub::classes_prime_squared(cfg.p, *cfg.D);
  if (cfg.n == 1) return mub::classes_prime(cfg.p);
  return mub::classes_general(mub::FieldContext::create(cfg.p, cfg.n));
}

void write_output(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream os(cfg.out);
  if (!os) throw std::runtime_error("cannot open output file " + cfg.out);
  os << text << "\n";
}

int cmd_generate(const Config& cfg) {
  check_config(cfg);
  mub::MubFamily fam = build_family(cfg);
  if (cfg.format == "csv") {
    write_output(cfg, mub::grid_csv(fam));
    return kExitOk;
  }
  json j;
  if (fam.d <= kDenseCap) {
    auto projs = mub::projections_for(fam);
    j = mub::family_with_projections_json(fam, projs, !cfg.no_matrices);
  } else {
    j = mub::family_to_json(fam);
    j["note"] = "projections omitted for d > " + std::to_string(kDenseCap);
  }
  write_output(cfg, j.dump(1));
  return kExitOk;
}

int cmd_verify(const Config& cfg) {
  mub::MubFamily fam;
  if (!cfg.in.empty()) {
    std::ifstream is(cfg.in);
    if (!is) throw std::runtime_error("cannot open input file " + cfg.in);
    json dump = json::parse(is);
    fam = mub::family_from_json(dump);
  } else {
    check_config(cfg);
    fam = build_family(cfg);
  }

  json report;
  report["schema_version"] = mub::kSchemaVersion;
  report["p"] = fam.p;
  report["n"] = fam.n;
  report["d"] = fam.d;
  report["tol"] = cfg.tol;
  bool pass = true;

  mub::PartitionCheck part = mub::verify_partition(fam);
  report["partition"] = {{"pass", part.pass},
                         {"classes", part.n_classes},
                         {"nonzero_covered", part.nonzero_covered},
                         {"failures", part.failures}};
  pass = pass && part.pass;

  double worst_comm = 0;
  for (const auto& cls : fam.classes) {
    if (fam.d <= 16) {
      std::vector<mub::DenseMatrix> mats;
      for (const auto& m : cls.members) mats.push_back(mub::tensor_spin_matrix(mub::TensorSpinIndex::from_flat(fam.p, m)));
      for (size_t i = 0; i < mats.size(); ++i)
        for (size_t j = i + 1; j < mats.size(); ++j)
          worst_comm = std::max(worst_comm, (mats[i] * mats[j] - mats[j] * mats[i]).cwiseAbs().maxCoeff());
    } else {
      std::vector<mub::DenseMatrix> mats;
      for (const auto& g : cls.generators) mats.push_back(mub::tensor_spin_matrix(g));
      for (size_t i = 0; i < mats.size(); ++i)
        for (size_t j = i + 1; j < mats.size(); ++j)
          worst_comm = std::max(worst_comm, (mats[i] * mats[j] - mats[j] * mats[i]).cwiseAbs().maxCoeff());
    }
  }
  report["commutation"] = {{"worst", worst_comm}, {"pass", worst_comm < cfg.tol}};
  pass = pass && worst_comm < cfg.tol;

  if (fam.d <= kDenseCap) {
    auto projs = mub::projections_for(fam);
    mub::MubCheck mc = mub::check_mub(projs, cfg.tol);
    report["projectors"] = {{"worst_within", mc.worst_within},
                            {"worst_completeness", mc.worst_completeness},
                            {"pass", mc.worst_within < cfg.tol && mc.worst_completeness < cfg.tol}};
    report["mub"] = {{"worst_cross", mc.worst_cross},
                     {"worst_vec_within", mc.worst_vec_within},
                     {"worst_vec_cross", mc.worst_vec_cross},
                     {"pass", mc.pass},
                     {"failures", mc.failures}};
    pass = pass && mc.pass;
  } else {
    report["projectors"] = {{"skipped", "d exceeds dense cap"}};
  }

  report["pass"] = pass;
  write_output(cfg, report.dump(1));
  std::cerr << (pass ? "verify: pass" : "verify: FAIL") << " (partition "
            << (part.pass ? "ok" : "FAIL") << ", worst commutator " << worst_comm << ")\n";
  return pass ? kExitOk : kExitVerificationFailed;
}

int cmd_separability(const Config& cfg) {
  check_config(cfg);
  mub::MubFamily fam = build_family(cfg);
  json report;
  report["schema_version"] = mub::kSchemaVersion;
  report["p"] = fam.p;
  report["n"] = fam.n;
  report["d"] = fam.d;
  bool pass = true;
  json rows = json::array();
  for (const auto& cls : fam.classes) {
    mub::SeparabilityReport rep = mub::decompose_class(cls);
    json row;
    row["label"] = cls.label.str();
    row["partition"] = rep.partition;
    row["tag"] = mub::tag_str(rep.tag);
    if (rep.ambiguous) row["ambiguous"] = true;
    if (fam.d <= kDenseCap) {
      mub::FactorizationReport fr = mub::factored_projections(cls, rep.partition);
      row["validated"] = fr.pass;
      row["worst_product_gap"] = fr.worst_product;
      pass = pass && fr.pass;
    }
    std::cerr << cls.label.str() << "  " << rep.partition_str() << "  " << tag_str(rep.tag) << "\n";
    rows.push_back(std::move(row));
  }
  report["classes"] = std::move(rows);
  report["pass"] = pass;
  write_output(cfg, report.dump(1));
  return pass ? kExitOk : kExitVerificationFailed;
}

int cmd_tomo(const Config& cfg) {
  check_config(cfg);
  long d = 1;
  for (long i = 0; i < cfg.n; ++i) d *= cfg.p;
  if (d > kDenseCap) throw std::invalid_argument("tomo requires p^n <= " + std::to_string(kDenseCap));

  mub::MubFamily fam = build_family(cfg);
  auto projs = mub::projections_for(fam);
  mub::DenseMatrix rho = cfg.mixed ? mub::DenseMatrix::Identity(fam.d, fam.d) / static_cast<double>(fam.d)
                                   : mub::random_density(fam.d, cfg.seed);
  mub::MeasurementRecord exact = mub::measure_probs(rho, fam, projs);

  auto reconstruct = [&](const mub::MeasurementRecord& rec) {
    return fam.n == 1 ? mub::reconstruct_prime(rec, fam) : mub::reconstruct_general(rec, fam, projs);
  };
  mub::DenseMatrix rho_exact = reconstruct(exact);
  double exact_err = (rho_exact - rho).norm();

  json report;
  report["schema_version"] = mub::kSchemaVersion;
  report["p"] = fam.p;
  report["n"] = fam.n;
  report["d"] = fam.d;
  report["seed"] = cfg.seed;
  report["route"] = fam.n == 1 ? "prime" : "general";
  report["exact_frobenius_error"] = exact_err;
  report["record"] = mub::record_to_json(exact);
  if (cfg.shots > 0) {
    mub::MeasurementRecord sampled = mub::sample_record(exact, cfg.shots, cfg.seed);
    double sampled_err = (reconstruct(sampled) - rho).norm();
    report["shots"] = cfg.shots;
    report["sampled_frobenius_error"] = sampled_err;
    report["sampled_record"] = mub::record_to_json(sampled);
  }
  bool pass = exact_err < cfg.tol;
  report["pass"] = pass;
  write_output(cfg, report.dump(1));
  std::cerr << "tomo: exact round-trip error " << exact_err << (pass ? " (pass)" : " (FAIL)") << "\n";
  return pass ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construction, verification, separability analysis and tomography for complete sets of mutually unbiased bases in prime-power dimension"};
  app.require_subcommand(1);

  Config cfg;
  auto* gen = app.add_subcommand("generate", "construct the d+1 commuting classes, projections and bases");
  add_common(gen, cfg, true);
  auto* ver = app.add_subcommand("verify", "run partition, commutation, projector and MUB checks");
  add_common(ver, cfg, false);
  ver->add_option("--in", cfg.in, "verify a previously generated JSON dump instead of reconstructing");
  auto* sep = app.add_subcommand("separability", "classify each class by its finest tensor factorization");
  add_common(sep, cfg, true);
  auto* tomo = app.add_subcommand("tomo", "measure a seeded random state in every basis and reconstruct it");
  add_common(tomo, cfg, true);
  tomo->add_flag("--mixed", cfg.mixed, "use the maximally mixed state instead of a random one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(cfg);
    if (ver->parsed()) {
      if (cfg.in.empty() && cfg.p == 0) throw std::invalid_argument("verify needs --p or --in");
      return cmd_verify(cfg);
    }
    if (sep->parsed()) return cmd_separability(cfg);
    if (tomo->parsed()) return cmd_tomo(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
