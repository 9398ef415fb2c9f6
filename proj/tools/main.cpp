#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sympolar/channels.hpp"
#include "sympolar/generate.hpp"
#include "sympolar/io.hpp"
#include "sympolar/polar.hpp"

namespace {

using nlohmann::json;
using namespace sympolar;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitDefective = 3;
constexpr int kExitVerification = 4;

std::string iso_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buffer[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

json tolerance_json(const TolerancePolicy& tol) {
  return json{{"rel_tol", tol.rel_tol}, {"imag_tol", tol.imag_tol}};
}

json classification_json(const EigenClassification& c) {
  return json{{"has_zero", c.has_zero},
              {"has_negative_real", c.has_negative_real},
              {"has_positive_real", c.has_positive_real},
              {"real_eigenvalues", c.real_eigenvalues},
              {"spectral_radius", c.spectral_radius}};
}

json factor_reports_json(const std::vector<FactorReport>& reports) {
  json out = json::array();
  for (const FactorReport& r : reports)
    out.push_back(json{{"kind", to_string(r.kind)},
                       {"residual", r.residual},
                       {"holds", r.holds}});
  return out;
}

void emit(const json& document, const std::string& out_path) {
  if (out_path.empty())
    std::cout << document.dump(2) << std::endl;
  else
    write_json(out_path, document);
}

struct CommonOptions {
  double tol = 1e-9;
  double imag_tol = 1e-9;
  bool no_timestamp = false;
  std::string out;

  [[nodiscard]] TolerancePolicy policy() const { return {tol, imag_tol}; }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--tol", opts.tol, "Relative residual tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--imag-tol", opts.imag_tol,
                  "Eigenvalue realness tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--no-timestamp", opts.no_timestamp,
                "Omit the timestamp field from reports");
  cmd->add_option("--out", opts.out, "Write the report to this path");
}

struct DecomposeOptions {
  CommonOptions common;
  std::vector<std::string> inputs;
  std::string variant;
  std::string factors_prefix;
  std::string out_dir;
  unsigned jobs = 1;
};

json decompose_report(const std::filesystem::path& input, Variant variant,
                      const DecomposeOptions& o, bool* ok_out) {
  const MatrixDocument doc = read_matrix_document(input);
  const TolerancePolicy tol = o.common.policy();
  const Factorization f = decompose(doc.rows, variant, tol);
  const VerifyReport vr = verify(doc.rows, f, tol);

  json report;
  report["operation"] = "decompose";
  report["input"] = input.string();
  report["variant"] = to_string(variant);
  report["n"] = doc.n;
  report["tolerance"] = tolerance_json(tol);
  report["factors"] = factor_reports_json(vr.structure_report);
  report["reconstruction_residual"] = vr.reconstruction_residual;
  report["verdict"] = vr.ok ? "ok" : "fail";
  if (!o.common.no_timestamp) report["timestamp"] = iso_timestamp();

  if (!o.factors_prefix.empty()) {
    for (std::size_t i = 0; i < f.factors.size(); ++i)
      write_matrix_document(
          o.factors_prefix + "factor" + std::to_string(i + 1) + ".json",
          f.factors[i]);
  }
  *ok_out = vr.ok;
  return report;
}

int run_decompose(const DecomposeOptions& o) {
  const auto variant = variant_from_string(o.variant);
  if (!variant) {
    std::cerr << "unknown variant '" << o.variant << "'\n";
    return kExitParse;
  }

  if (o.inputs.size() == 1 && o.out_dir.empty()) {
    bool ok = false;
    const json report = decompose_report(o.inputs.front(), *variant, o, &ok);
    emit(report, o.common.out);
    return ok ? kExitOk : kExitVerification;
  }

  // Batch mode: one report per input, written next to --out-dir (or cwd),
  // computed across --jobs worker threads.
  const std::filesystem::path dir = o.out_dir.empty() ? "." : o.out_dir;
  std::filesystem::create_directories(dir);
  struct Slot {
    json report;
    int code = kExitOk;
    std::string error;
  };
  std::vector<Slot> slots(o.inputs.size());
  std::atomic<std::size_t> next{0};
  const unsigned workers =
      std::max(1u, std::min<unsigned>(o.jobs, o.inputs.size()));

  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < o.inputs.size();
         i = next.fetch_add(1)) {
      try {
        bool ok = false;
        slots[i].report = decompose_report(o.inputs[i], *variant, o, &ok);
        slots[i].code = ok ? kExitOk : kExitVerification;
      } catch (const PreconditionViolated& e) {
        slots[i].code = kExitPrecondition;
        slots[i].error = e.what();
      } catch (const DefectiveEigenstructure& e) {
        slots[i].code = kExitDefective;
        slots[i].error = e.what();
      } catch (const NonConvergence& e) {
        slots[i].code = kExitDefective;
        slots[i].error = e.what();
      } catch (const Error& e) {
        slots[i].code = kExitParse;
        slots[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();

  int exit_code = kExitOk;
  for (std::size_t i = 0; i < o.inputs.size(); ++i) {
    const auto stem = std::filesystem::path(o.inputs[i]).stem().string();
    if (slots[i].error.empty())
      write_json(dir / (stem + ".report.json"), slots[i].report);
    else
      std::cerr << o.inputs[i] << ": " << slots[i].error << '\n';
    exit_code = std::max(exit_code, slots[i].code);
  }
  return exit_code;
}

struct VerifyOptions {
  CommonOptions common;
  std::string input;
  std::vector<std::string> factor_files;
  std::string variant;
};

int run_verify(const VerifyOptions& o) {
  const auto variant = variant_from_string(o.variant);
  if (!variant) {
    std::cerr << "unknown variant '" << o.variant << "'\n";
    return kExitParse;
  }
  const MatrixDocument doc = read_matrix_document(o.input);
  Factorization f;
  f.variant = *variant;
  for (const std::string& path : o.factor_files)
    f.factors.push_back(read_matrix_document(path).rows);

  const TolerancePolicy tol = o.common.policy();
  const VerifyReport vr = verify(doc.rows, f, tol);

  json report;
  report["operation"] = "verify";
  report["input"] = o.input;
  report["variant"] = to_string(*variant);
  report["n"] = doc.n;
  report["tolerance"] = tolerance_json(tol);
  report["factors"] = factor_reports_json(vr.structure_report);
  report["reconstruction_residual"] = vr.reconstruction_residual;
  report["verdict"] = vr.ok ? "ok" : "fail";
  if (!o.common.no_timestamp) report["timestamp"] = iso_timestamp();
  emit(report, o.common.out);
  return vr.ok ? kExitOk : kExitVerification;
}

struct ChannelOptions {
  CommonOptions common;
  std::string input;
  std::string second_input;
  std::string case_name = "auto";
  std::string results_prefix;
};

int run_channel_validate(const ChannelOptions& o) {
  const GaussianChannelTriple c = to_channel(read_matrix_document(o.input));
  const TolerancePolicy tol = o.common.policy();
  const ChannelValidity v = validate_channel(c, tol);

  json report;
  report["operation"] = "channel-validate";
  report["input"] = o.input;
  report["n"] = channel_mode_count(c);
  report["tolerance"] = tolerance_json(tol);
  report["min_eigenvalue"] = v.min_eigenvalue;
  report["verdict"] = v.valid ? "ok" : "fail";
  if (!o.common.no_timestamp) report["timestamp"] = iso_timestamp();
  emit(report, o.common.out);
  return v.valid ? kExitOk : kExitVerification;
}

int run_channel_classify(const ChannelOptions& o) {
  const MatrixDocument doc = read_matrix_document(o.input);
  const TolerancePolicy tol = o.common.policy();
  const ChannelClassification cc = classify_channel(doc.rows, tol);

  json cases = json::array();
  for (ChannelCase c : cc.admissible_cases()) cases.push_back(to_string(c));

  json report;
  report["operation"] = "channel-classify";
  report["input"] = o.input;
  report["n"] = doc.n;
  report["tolerance"] = tolerance_json(tol);
  report["classification"] = classification_json(cc.classification);
  report["det_k"] = cc.det_k;
  report["admissible_cases"] = std::move(cases);
  if (doc.n == 1 && cc.dr_admissible)
    report["holevo_case"] = cc.det_k > 0.0 ? "B-C" : "D";
  report["verdict"] = "ok";
  if (!o.common.no_timestamp) report["timestamp"] = iso_timestamp();
  emit(report, o.common.out);
  return kExitOk;
}

int run_channel_compose(const ChannelOptions& o) {
  const GaussianChannelTriple c2 = to_channel(read_matrix_document(o.input));
  const GaussianChannelTriple c1 =
      to_channel(read_matrix_document(o.second_input));
  const GaussianChannelTriple product = compose(c2, c1);

  MatrixDocument doc;
  doc.n = channel_mode_count(product);
  doc.rows = product.k;
  doc.l = product.l;
  doc.alpha = product.alpha;
  emit(to_json(doc), o.common.out);
  return kExitOk;
}

int run_channel_normal_form(const ChannelOptions& o) {
  const GaussianChannelTriple c = to_channel(read_matrix_document(o.input));
  const TolerancePolicy tol = o.common.policy();

  std::optional<ChannelCase> requested;
  if (o.case_name != "auto") {
    requested = channel_case_from_string(o.case_name);
    if (!requested) {
      std::cerr << "unknown case '" << o.case_name << "'\n";
      return kExitParse;
    }
  }

  const ChannelNormalForm nf = normal_form(c, requested, tol);
  const StructureKind core_kind = nf.form == ChannelCase::DRForm
                                      ? StructureKind::Symmetric
                                      : StructureKind::SkewSymmetric;
  const StructureCheck core_check =
      check_structure(nf.core_factor, core_kind, tol);
  const bool ok =
      core_check.holds && nf.reconstruction_residual <= tol.rel_tol * 1e2;

  json report;
  report["operation"] = "channel-normal-form";
  report["input"] = o.input;
  report["case"] = to_string(nf.form);
  report["n"] = channel_mode_count(c);
  report["tolerance"] = tolerance_json(tol);
  report["classification"] =
      classification_json(classify_channel(c.k, tol).classification);
  report["core_factor"] = json{{"kind", to_string(core_kind)},
                               {"residual", core_check.residual},
                               {"holds", core_check.holds}};
  report["reconstruction_residual"] = nf.reconstruction_residual;
  json nu = json::array();
  for (Index i = 0; i < nf.canonical.alpha.rows() / 2; ++i)
    nu.push_back(nf.canonical.alpha(i, i));
  report["nu"] = std::move(nu);
  report["verdict"] = ok ? "ok" : "fail";
  if (!o.common.no_timestamp) report["timestamp"] = iso_timestamp();

  if (!o.results_prefix.empty()) {
    write_channel_document(o.results_prefix + "canonical.json", nf.canonical);
    write_channel_document(o.results_prefix + "left.json",
                           nf.left.as_channel());
    write_channel_document(o.results_prefix + "right.json",
                           nf.right.as_channel());
  }
  emit(report, o.common.out);
  return ok ? kExitOk : kExitVerification;
}

struct GenerateOptions {
  std::string kind;
  Index n = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateOptions& o) {
  RandomStream rng(o.seed);
  MatrixDocument doc;
  doc.n = o.n;
  if (o.kind == "nondegenerate") {
    doc.rows = random_nondegenerate(o.n, rng);
  } else if (o.kind == "symplectic") {
    doc.rows = random_symplectic(o.n, rng);
  } else if (o.kind == "skew_hamiltonian") {
    doc.rows = random_skew_hamiltonian(o.n, rng);
  } else if (o.kind == "valid_channel") {
    const GaussianChannelTriple c = random_valid_channel(o.n, rng);
    doc.rows = c.k;
    doc.l = c.l;
    doc.alpha = c.alpha;
  } else {
    std::cerr << "unknown kind '" << o.kind << "'\n";
    return kExitParse;
  }
  json document = to_json(doc);
  document["kind"] = o.kind;
  document["seed"] = o.seed;
  emit(document, o.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectic polar decompositions and Gaussian channel normal "
               "forms"};
  app.require_subcommand(1);

  DecomposeOptions dec;
  CLI::App* cmd_decompose = app.add_subcommand(
      "decompose", "Factor a matrix into one of the twelve variants");
  cmd_decompose->add_option("inputs", dec.inputs, "Matrix document(s)")
      ->required()
      ->expected(-1);
  cmd_decompose->add_option("--variant", dec.variant, "Variant tag")
      ->required();
  cmd_decompose->add_option("--factors-prefix", dec.factors_prefix,
                            "Write factor matrices with this path prefix");
  cmd_decompose->add_option("--out-dir", dec.out_dir,
                            "Directory for batch reports");
  cmd_decompose->add_option("--jobs", dec.jobs,
                            "Worker threads for batch inputs")
      ->check(CLI::PositiveNumber);
  add_common(cmd_decompose, dec.common);

  VerifyOptions ver;
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "Recompute the residuals of a stored factorization");
  cmd_verify->add_option("input", ver.input, "Matrix document")->required();
  cmd_verify->add_option("factors", ver.factor_files, "Factor documents")
      ->required()
      ->expected(2);
  cmd_verify->add_option("--variant", ver.variant, "Variant tag")->required();
  add_common(cmd_verify, ver.common);

  CLI::App* cmd_channel =
      app.add_subcommand("channel", "Gaussian channel operations");
  cmd_channel->require_subcommand(1);

  ChannelOptions ch_validate;
  CLI::App* cmd_ch_validate = cmd_channel->add_subcommand(
      "validate", "Check the non-negativity condition of a channel triple");
  cmd_ch_validate->add_option("input", ch_validate.input, "Channel document")
      ->required();
  add_common(cmd_ch_validate, ch_validate.common);

  ChannelOptions ch_classify;
  CLI::App* cmd_ch_classify = cmd_channel->add_subcommand(
      "classify", "Spectrum flags and admissible canonical cases of K");
  cmd_ch_classify->add_option("input", ch_classify.input,
                              "Matrix or channel document")
      ->required();
  add_common(cmd_ch_classify, ch_classify.common);

  ChannelOptions ch_compose;
  CLI::App* cmd_ch_compose = cmd_channel->add_subcommand(
      "compose", "Monoid product of two channel triples");
  cmd_ch_compose->add_option("first", ch_compose.input, "Channel document")
      ->required();
  cmd_ch_compose
      ->add_option("second", ch_compose.second_input, "Channel document")
      ->required();
  add_common(cmd_ch_compose, ch_compose.common);

  ChannelOptions ch_normal;
  CLI::App* cmd_ch_normal = cmd_channel->add_subcommand(
      "normal-form", "Reduce a channel to canonical form");
  cmd_ch_normal->add_option("input", ch_normal.input, "Channel document")
      ->required();
  cmd_ch_normal->add_option("--case", ch_normal.case_name,
                            "auto, dr, a or da")
      ->capture_default_str();
  cmd_ch_normal->add_option("--results-prefix", ch_normal.results_prefix,
                            "Write canonical triple and transforms with this "
                            "path prefix");
  add_common(cmd_ch_normal, ch_normal.common);

  GenerateOptions gen;
  CLI::App* cmd_generate = app.add_subcommand(
      "generate", "Deterministic seeded instance generator");
  cmd_generate
      ->add_option("--kind", gen.kind,
                   "nondegenerate, symplectic, skew_hamiltonian or "
                   "valid_channel")
      ->required();
  cmd_generate->add_option("-n,--modes", gen.n, "Mode count")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_generate->add_option("--seed", gen.seed, "Generator seed")
      ->capture_default_str();
  cmd_generate->add_option("--out", gen.out, "Write the document to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (app.got_subcommand(cmd_decompose)) return run_decompose(dec);
    if (app.got_subcommand(cmd_verify)) return run_verify(ver);
    if (cmd_channel->got_subcommand(cmd_ch_validate))
      return run_channel_validate(ch_validate);
    if (cmd_channel->got_subcommand(cmd_ch_classify))
      return run_channel_classify(ch_classify);
    if (cmd_channel->got_subcommand(cmd_ch_compose))
      return run_channel_compose(ch_compose);
    if (cmd_channel->got_subcommand(cmd_ch_normal))
      return run_channel_normal_form(ch_normal);
    if (app.got_subcommand(cmd_generate)) return run_generate(gen);
  } catch (const PreconditionViolated& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const DefectiveEigenstructure& e) {
    std::cerr << "defective eigenstructure: " << e.what() << '\n';
    return kExitDefective;
  } catch (const NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitDefective;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitOk;
}
