// wcore: compute, verify and cross-check weighted core-type inverses.
//
// Exit codes: 0 success (including a negative mathematical answer),
// 1 verification failed or oracle mismatches, 2 invalid input,
// 3 internal error (a construction failed its own check).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wcore/io.hpp"
#include "wcore/wcore.hpp"

namespace {

using namespace wcore;
using wcore::io::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;
constexpr int kInternal = 3;

struct Options {
  std::string kind;
  std::string a_path, e_path, f_path, cert_path, out_path;
  std::optional<int> n;
  std::string flavor = "p";
  std::string side = "core";
  int p = 2;
  std::size_t dim = 2;
  std::optional<std::uint64_t> sample;
  std::optional<std::uint64_t> seed;
  std::string weight_pairs = "all";
};

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw io::FormatError("cannot read '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw io::FormatError(path + ": " + e.what());
  }
}

void emit(const json& j, const Options& o) {
  const std::string text = io::dump(j);
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path);
  if (!out) throw io::FormatError("cannot write '" + o.out_path + "'");
  out << text;
}

template <class S>
Weight<S> weight_or_identity(const std::string& path, const Mat<S>& a) {
  if (path.empty()) return Weight<S>::identity(a.dim(), a.domain());
  auto w = io::weight_from_json<S>(read_json(path));
  a.check_compatible(w.value());
  return w;
}

// --- subcommands -------------------------------------------------------------

template <class S>
int run_compute(const json& aj, const Options& o) {
  const auto kind = parse_kind(o.kind);
  if (!kind) throw ArgumentError("unknown kind '" + o.kind + "'");
  if (o.n && *kind != GInverseKind::ECore && *kind != GInverseKind::FDualCore) {
    throw ArgumentError("--n applies to ecore and fdualcore only");
  }
  const Mat<S> a = io::matrix_from_json<S>(aj);
  const Weight<S> e = weight_or_identity(o.e_path, a);
  const Weight<S> f = weight_or_identity(o.f_path, a);
  auto out = compute<S>(*kind, a, &e, &f, o.n);
  if (!out) {
    emit(io::to_json(out.failure()), o);
    return kOk;
  }
  const bool verified = verify(*kind, a, out.value().value, &e, &f).ok();
  emit(io::to_json(out.value(), verified), o);
  return verified ? kOk : kInternal;
}

template <class S>
int report_verification(const VerifyReport& report, json extra, const Options& o) {
  json j = io::to_json(report);
  for (auto& [key, value] : extra.items()) j[key] = value;
  emit(j, o);
  if (report.ok()) return kOk;
  std::cerr << "failed:";
  const auto failed = report.failed();
  for (std::size_t k = 0; k < failed.size(); ++k) std::cerr << (k ? "; " : " ") << failed[k];
  std::cerr << '\n';
  return kFailed;
}

template <class S>
int run_verify(const json& aj, const Options& o) {
  const Mat<S> a = io::matrix_from_json<S>(aj);
  const json cj = read_json(o.cert_path);
  const Weight<S> e = weight_or_identity(o.e_path, a);
  const Weight<S> f = weight_or_identity(o.f_path, a);

  if (!io::is_decomposition(cj)) {
    const auto cert = io::certificate_from_json<S>(cj);
    a.check_compatible(cert.value);
    return report_verification<S>(verify_certificate(cert, a, &e, &f), {{"kind", std::string(to_string(cert.kind))}}, o);
  }

  // Decomposition: replay the closed form, then compare with the direct inverse.
  const auto d = io::decomposition_from_json<S>(cj);
  const Weight<S>& w = d.side == Side::Core ? e : f;
  const GInverseKind kind = d.side == Side::Core ? GInverseKind::ECore : GInverseKind::FDualCore;
  json extra{{"kind", std::string(to_string(kind))},
             {"flavor", std::string(to_string(d.flavor))},
             {"side", std::string(to_string(d.side))}};
  Mat<S> x = a;
  try {
    x = reconstruct(a, w, d);
  } catch (const InvalidCertificate& err) {
    VerifyReport report;
    report.equations.push_back({std::string("certificate hypotheses: ") + err.what(), false});
    return report_verification<S>(report, extra, o);
  }
  VerifyReport report = verify(kind, a, x, &e, &f);
  auto direct = compute<S>(kind, a, &e, &f);
  report.equations.push_back({"matches direct inverse", direct.ok() && direct.value().value == x});
  extra["value"] = io::to_json(x);
  return report_verification<S>(report, extra, o);
}

template <class S>
int run_ep(const json& aj, const Options& o) {
  const Mat<S> a = io::matrix_from_json<S>(aj);
  const Weight<S> e = weight_or_identity(o.e_path, a);
  const Weight<S> f = weight_or_identity(o.f_path, a);
  const int n = o.n.value_or(1);
  auto verdict = is_weighted_ep(a, e, f);
  json j = io::to_json(verdict);
  auto dec = ep_decompose(a, e, f, n);
  if (dec.ok() != verdict.weighted_ep) throw VerificationFailure("EP verdict and decomposition disagree");
  if (dec) {
    j["n"] = n;
    j["unit"] = io::to_json(dec.value().unit);
  }
  emit(j, o);
  return kOk;
}

template <class S>
int run_decompose(const json& aj, const Options& o) {
  const auto flavor = parse_flavor(o.flavor);
  const auto side = parse_side(o.side);
  if (!flavor || !is_idempotent_flavor(*flavor)) throw ArgumentError("--flavor must be p or q");
  if (!side) throw ArgumentError("--side must be core or dual");
  const Mat<S> a = io::matrix_from_json<S>(aj);
  const Weight<S> w = weight_or_identity(*side == Side::Core ? o.e_path : o.f_path, a);
  auto d = decompose(a, w, *side, *flavor, o.n.value_or(1));
  emit(d ? io::to_json(d.value()) : io::to_json(d.failure()), o);
  return kOk;
}

template <template <class> class Fn>
int dispatch(const Options& o) {
  const json aj = read_json(o.a_path);
  switch (io::backend_of(aj).backend) {
    case io::Backend::Q: return Fn<Rational>{}(aj, o);
    case io::Backend::Qi: return Fn<GaussianRational>{}(aj, o);
    case io::Backend::Fp: return Fn<PrimeField>{}(aj, o);
  }
  return kBadInput;
}

template <class S>
struct Compute {
  int operator()(const json& aj, const Options& o) const { return run_compute<S>(aj, o); }
};
template <class S>
struct Verify {
  int operator()(const json& aj, const Options& o) const { return run_verify<S>(aj, o); }
};
template <class S>
struct Ep {
  int operator()(const json& aj, const Options& o) const { return run_ep<S>(aj, o); }
};
template <class S>
struct Decompose {
  int operator()(const json& aj, const Options& o) const { return run_decompose<S>(aj, o); }
};

int run_oracle(const Options& o) {
  const int n = o.n.value_or(1);
  OracleReport report;
  if (o.sample) {
    if (!o.seed) throw ArgumentError("--sample requires --seed");
    report = sweep_sampled(o.p, o.dim, n, *o.sample, *o.seed);
  } else {
    WeightPairs pairs = WeightPairs::All;
    if (o.weight_pairs == "diagonal") {
      pairs = WeightPairs::Diagonal;
    } else if (o.weight_pairs == "identity") {
      pairs = WeightPairs::Identity;
    } else if (o.weight_pairs != "all") {
      throw ArgumentError("--weight-pairs must be all, diagonal or identity");
    }
    report = sweep(o.p, o.dim, n, pairs);
  }
  emit(io::to_json(report), o);
  return report.result.mismatches.empty() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact weighted core, dual core, group and weighted Moore-Penrose inverses"};
  app.require_subcommand(1);
  Options o;

  auto add_n = [&](CLI::App* cmd) { cmd->add_option("--n", o.n, "exponent n")->check(CLI::Range(1, 8)); };
  auto add_weights = [&](CLI::App* cmd) {
    cmd->add_option("--e", o.e_path, "weight e (default: identity)");
    cmd->add_option("--f", o.f_path, "weight f (default: identity)");
  };

  auto* compute_cmd = app.add_subcommand("compute", "compute an inverse and its certificate");
  compute_cmd->add_option("--kind", o.kind, "group | 13e | 14f | wmp | ecore | fdualcore")->required();
  compute_cmd->add_option("--a", o.a_path, "matrix a (JSON, '-' for stdin)")->required();
  add_weights(compute_cmd);
  add_n(compute_cmd);
  compute_cmd->add_option("--out", o.out_path, "write output here instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "replay a certificate or decomposition");
  verify_cmd->add_option("--cert", o.cert_path, "certificate or decomposition (JSON)")->required();
  verify_cmd->add_option("--a", o.a_path, "matrix a (JSON)")->required();
  add_weights(verify_cmd);
  verify_cmd->add_option("--out", o.out_path);

  auto* ep_cmd = app.add_subcommand("ep", "decide weighted-EP with respect to (e, f)");
  ep_cmd->add_option("--a", o.a_path)->required();
  add_weights(ep_cmd);
  add_n(ep_cmd);
  ep_cmd->add_option("--out", o.out_path);

  auto* dec_cmd = app.add_subcommand("decompose", "idempotent/unit certificate of a core or dual core inverse");
  dec_cmd->add_option("--a", o.a_path)->required();
  add_weights(dec_cmd);
  add_n(dec_cmd);
  dec_cmd->add_option("--flavor", o.flavor, "p | q");
  dec_cmd->add_option("--side", o.side, "core | dual");
  dec_cmd->add_option("--out", o.out_path);

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force differential sweep over M_dim(F_p)");
  oracle_cmd->add_option("--p", o.p, "prime 2, 3 or 5")->required();
  oracle_cmd->add_option("--dim", o.dim)->required()->check(CLI::Range(1, 8));
  add_n(oracle_cmd);
  oracle_cmd->add_option("--sample", o.sample, "random instances instead of exhaustive enumeration");
  oracle_cmd->add_option("--seed", o.seed);
  oracle_cmd->add_option("--weight-pairs", o.weight_pairs, "all | diagonal | identity");
  oracle_cmd->add_option("--out", o.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*compute_cmd) return dispatch<Compute>(o);
    if (*verify_cmd) return dispatch<Verify>(o);
    if (*ep_cmd) return dispatch<Ep>(o);
    if (*dec_cmd) return dispatch<Decompose>(o);
    return run_oracle(o);
  } catch (const VerificationFailure& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const DivisionByZero& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
}
