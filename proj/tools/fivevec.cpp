// fivevec: run the verification suites, transform component files and
// build five-vector bases from four-vector bases.
//
// Exit codes: 0 success, 1 failed check or processing error, 2 usage error.

#include <CLI11.hpp>

#include <iostream>

#include "fivevec/bases.hpp"
#include "fivevec/io.hpp"
#include "fivevec/poincare.hpp"
#include "fivevec/stress_energy.hpp"
#include "fivevec/verify.hpp"

using namespace fivevec;

namespace {

int cmd_verify(const std::string& suite, const VerifyOptions& o, const std::string& format) {
  const SuiteReport r = run_suite(parse_suite(suite), o);
  std::cout << (format == "machine" ? r.machine() : r.human());
  return r.all_pass() ? 0 : 1;
}

Document transform_document(const Document& in, const PoincareTransform& t) {
  Document out = in;
  if (in.kind == "five_vector" || in.kind == "five_form") {
    const bool form = in.kind == "five_form";
    const auto items = to_five_vectors(in);
    if (in.basis == BasisFlag::Regular) throw Error(ErrorCode::KindMismatch, "transforms act on O- or P-basis components");
    out.data.clear();
    for (const Vec5& v : items) {
      Vec5 r;
      if (in.basis == BasisFlag::P) {
        r = form ? transform_components_p(FiveForm{v, {}}, t, in.kappa).components
                 : transform_components_p(FiveVector{v, {}}, t, in.kappa).components;
      } else {
        r = form ? transform_components_o(FiveForm{v, {}}, t).components
                 : transform_components_o(FiveVector{v, {}}, t).components;
      }
      out.data.insert(out.data.end(), r.data(), r.data() + 5);
    }
    return out;
  }
  if (in.kind == "m_tensor_field") {
    const MTensorField m = transform_m(to_m_field(in), t);
    Document d = from_m_field(m);
    d.extra = in.extra;
    return d;
  }
  if (in.kind == "poincare_transform") {
    Document d = from_transform(compose(t, to_transform(in)));
    d.extra = in.extra;
    return d;
  }
  throw Error(ErrorCode::KindMismatch, "kind '" + in.kind + "' has no transformation law");
}

int cmd_transform(const std::string& input, const std::string& transform, const std::string& output,
                  const std::string& basis, double kappa, bool kappa_set, bool invert) {
  Document in = read_document(input);
  if (!basis.empty()) in.basis = parse_basis_flag(basis);
  if (kappa_set) in.kappa = kappa;
  PoincareTransform t = to_transform(read_document(transform));
  if (invert) t = inverse(t);
  const Document out = transform_document(in, t);
  if (output.empty() || output == "-") {
    std::cout << emit_document(out);
  } else {
    write_document(output, out);
  }
  return 0;
}

int cmd_basis(const std::string& mode, const std::string& input, const std::string& output, Tolerance tol) {
  const FourBasisInput in = to_four_basis(read_document(input));
  const MetricH h(in.h, tol);
  const bool lemma1 = mode == "lemma1";
  const Basis5 b = lemma1 ? lemma1_construct(in.e, h, tol) : lemma2_construct(in.e, h, tol);
  const LemmaResidual res = lemma_residual(b, in.e, h, lemma1);
  const Document out = from_basis5(b, b.flags(), res);
  if (output.empty() || output == "-") {
    std::cout << emit_document(out);
  } else {
    write_document(output, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Five-vector algebra, bases, transport and conservation checks"};
  app.require_subcommand(1);

  VerifyOptions vo;
  std::string suite = "all";
  std::string format = "human";
  std::string scheme = "central2";
  std::string vbasis;
  double tol_rel = Tolerance{}.rel;
  auto* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("suite", suite, "algebra, bases, clifford, connection, poincare, conservation or all")
      ->check(CLI::IsMember({"algebra", "bases", "clifford", "connection", "poincare", "conservation", "all"}));
  verify->add_option("--seed", vo.seed, "random seed");
  verify->add_option("--tol", tol_rel, "relative tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--kappa", vo.kappa, "transport constant (nonzero)");
  verify->add_option("--grid", vo.grid, "finest sample count per axis for refinement checks")->check(CLI::Range(5, 257));
  verify->add_option("--scheme", scheme, "finite-difference scheme")->check(CLI::IsMember({"central2", "central4"}));
  verify->add_option("--basis", vbasis, "restrict the conservation suite to one basis")->check(CLI::IsMember({"O", "P"}));
  verify->add_option("--jobs", vo.jobs, "suites run concurrently")->check(CLI::Range(1, 64));
  verify->add_option("--format", format, "report format")->check(CLI::IsMember({"human", "machine"}));

  std::string t_input, t_transform, t_output, t_basis;
  double t_kappa = 1.0;
  bool t_invert = false;
  auto* transform = app.add_subcommand("transform", "apply a Poincare transformation to a component file");
  transform->add_option("input", t_input, "input file")->required()->check(CLI::ExistingFile);
  transform->add_option("transform", t_transform, "poincare_transform file")->required()->check(CLI::ExistingFile);
  transform->add_option("-o,--output", t_output, "output file (default stdout)");
  transform->add_option("--basis", t_basis, "override the basis flag of the input")->check(CLI::IsMember({"O", "P"}));
  auto* t_kappa_opt = transform->add_option("--kappa", t_kappa, "override kappa of the input");
  transform->add_flag("--inverse", t_invert, "apply the inverse transformation");

  std::string b_mode, b_input, b_output;
  double b_tol = Tolerance{}.rel;
  auto* basis = app.add_subcommand("basis", "construct a five-vector basis from a four-vector basis");
  basis->add_option("mode", b_mode, "lemma1 (orthonormal) or lemma2 (regular)")
      ->required()
      ->check(CLI::IsMember({"lemma1", "lemma2"}));
  basis->add_option("input", b_input, "four_basis file")->required()->check(CLI::ExistingFile);
  basis->add_option("-o,--output", b_output, "output file (default stdout)");
  basis->add_option("--tol", b_tol, "relative tolerance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      vo.tol.rel = tol_rel;
      vo.scheme = parse_scheme(scheme);
      if (!vbasis.empty()) vo.basis = parse_basis_flag(vbasis);
      if (vo.kappa == 0.0) {
        std::cerr << "error: --kappa must be nonzero\n";
        return 2;
      }
      return cmd_verify(suite, vo, format);
    }
    if (transform->parsed()) {
      return cmd_transform(t_input, t_transform, t_output, t_basis, t_kappa, t_kappa_opt->count() > 0, t_invert);
    }
    if (basis->parsed()) {
      Tolerance tol;
      tol.rel = b_tol;
      return cmd_basis(b_mode, b_input, b_output, tol);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
