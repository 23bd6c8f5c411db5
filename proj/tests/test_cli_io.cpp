#include <doctest.h>

#include <sys/wait.h>

#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "fivevec/io.hpp"
#include "fivevec/sampling.hpp"
#include "fivevec/verify.hpp"
#include "support.hpp"

using namespace fivevec;
namespace fs = std::filesystem;

namespace {

const char* kVector =
    "fivevec 1\n"
    "kind five_vector\n"
    "basis P\n"
    "kappa 1\n"
    "labels 0 1 2 3 5\n"
    "records 2\n"
    "components 5\n"
    "note kept as is\n"
    "data\n"
    "1 0.5 0 0 2\n"
    "-0.25 0 3 0 1\n";

template <typename F>
std::optional<std::pair<int, int>> parse_error_at(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return std::pair{e.line(), e.column()};
  }
  return std::nullopt;
}

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / "fivevec_cli_io_test";
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(FIVEVEC_CLI) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("canonical files round trip byte for byte") {
  const Document d = parse_document(kVector);
  CHECK(d.kind == "five_vector");
  CHECK(d.basis == BasisFlag::P);
  CHECK(d.records == 2);
  REQUIRE(d.find("note") != nullptr);
  CHECK(*d.find("note") == "kept as is");
  CHECK(emit_document(d) == kVector);
  CHECK(emit_document(parse_document(emit_document(d))) == kVector);
}

TEST_CASE("numbers survive bit exactly") {
  const std::vector<double> values{0.1,
                                   1.0 / 3.0,
                                   -0.0,
                                   std::numeric_limits<double>::denorm_min(),
                                   std::numeric_limits<double>::max(),
                                   std::numeric_limits<double>::min() / 3.0,
                                   -1e-300,
                                   6.02214076e23,
                                   std::nextafter(1.0, 2.0),
                                   M_PI};
  Document d;
  d.kind = "scalars";
  d.components = 1;
  d.records = values.size();
  d.data = values;
  const Document back = parse_document(emit_document(d));
  REQUIRE(back.data.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(std::bit_cast<std::uint64_t>(back.data[i]) == std::bit_cast<std::uint64_t>(values[i]));
  }

  Sampler s(113);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(s.uniform(-1, 1), static_cast<int>(s.uniform(-1000, 1000)));
    CHECK(std::stod(format_number(v)) == v);
  }
}

TEST_CASE("parse errors carry positions") {
  SUBCASE("non-finite value") {
    std::string text = kVector;
    text.replace(text.find("0 3 0"), 1, "nan");
    try {
      parse_document(text);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 11);
      CHECK(e.column() == 7);
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("sample 1, component 1") != std::string::npos);
    }
  }
  SUBCASE("too few values") {
    std::string text = kVector;
    text.erase(text.rfind(" 1\n"), 2);
    CHECK(parse_error_at([&] { parse_document(text); }) == std::pair{11, 1});
  }
  SUBCASE("too many values") {
    const std::string text = std::string(kVector) + "7\n";
    CHECK(parse_error_at([&] { parse_document(text); }) == std::pair{12, 1});
  }
  SUBCASE("bad header") {
    CHECK(parse_error_at([&] { parse_document("fivevec 2\n"); }) == std::pair{1, 1});
    CHECK(parse_error_at([&] { parse_document(""); }).has_value());
    std::string labels = kVector;
    labels.replace(labels.find("2 3 5"), 5, "2 3 4");
    CHECK(parse_error_at([&] { parse_document(labels); }) == std::pair{5, 16});
    std::string word = kVector;
    word.replace(word.find("0.5"), 3, "x.5");
    CHECK(parse_error_at([&] { parse_document(word); }) == std::pair{10, 3});
  }
}

TEST_CASE("typed views") {
  SUBCASE("five-vectors") {
    const std::vector<Vec5> v{Vec5(1, 2, 3, 4, 5), Vec5(0.5, 0, 0, 0, -1)};
    const Document d = from_five_vectors(v, BasisFlag::O, 2.0, true);
    CHECK(d.kind == "five_form");
    const Document back = parse_document(emit_document(d));
    CHECK(back.kappa == 2.0);
    CHECK(to_five_vectors(back) == v);
    CHECK_CODE(to_transform(back), KindMismatch);
  }
  SUBCASE("transforms") {
    Sampler s(127);
    const PoincareTransform t = s.poincare();
    const PoincareTransform back = to_transform(parse_document(emit_document(from_transform(t))));
    CHECK(back.lambda == t.lambda);
    CHECK(back.a == t.a);
    Document bad = from_transform(t);
    bad.data[0] = 3.0;
    CHECK_CODE(to_transform(bad), InvalidArgument);
  }
  SUBCASE("M fields") {
    const Grid4 g = Grid4::cube(3, -0.5, 0.5, {true, false, true, false});
    const MTensorField m = assemble_m_p(sample_plane_wave(g, Vec4(1, 1, 0, 0)), zero_sigma(g), LorentzChart{});
    const MTensorField back = to_m_field(parse_document(emit_document(from_m_field(m))));
    CHECK(back.grid == g);
    CHECK(back.basis == BasisFlag::P);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (int mu = 0; mu < 4; ++mu) CHECK(back.m[i][mu] == m.m[i][mu]);
  }
  SUBCASE("four-vector bases") {
    Sampler s(131);
    Mat5 frame;
    const auto e = s.orthonormal_four_basis(&frame);
    const FourBasisInput in = to_four_basis(parse_document(emit_document(from_four_basis_bivectors(e, eta5()))));
    for (int a = 0; a < 4; ++a) CHECK(in.e[a].matrix() == e[a].matrix());
    CHECK(in.h == eta5());

    const Mat4 u = Mat4::Identity() * 2.0;
    const FourBasisInput comp =
        to_four_basis(parse_document(emit_document(from_four_basis_components(u, Mat5::Identity(), eta5()))));
    CHECK(comp.e[1].at(1, 5) == 2.0);
    CHECK(comp.e[1].at(0, 5) == 0.0);
  }
}

TEST_CASE("reports") {
  CHECK(CheckResult{"x", 1e-10, 1e-9, ""}.pass());
  CHECK(CheckResult{"x", 0.0, 0.0, ""}.pass());
  CHECK_FALSE(CheckResult{"x", 2e-9, 1e-9, ""}.pass());
  CHECK_FALSE(CheckResult{"x", std::nan(""), 1e-9, ""}.pass());

  SuiteReport r;
  r.add("a.one", 0.5, 1.0);
  r.add("a.two", 2.0, 1.0, "note");
  CHECK_FALSE(r.all_pass());
  CHECK(r.failures() == 1);
  const std::string m = r.machine();
  CHECK(m.find("a.one 5.000000000e-01 1.000000000e+00 pass\n") != std::string::npos);
  CHECK(m.find("a.two 2.000000000e+00 1.000000000e+00 fail\n") != std::string::npos);
  CHECK(m.find("note") == std::string::npos);
  CHECK(r.human().find("note") != std::string::npos);
}

TEST_CASE("suites are deterministic per seed") {
  VerifyOptions o;
  o.seed = 9;
  const std::string first = run_suite(Suite::Algebra, o).machine();
  CHECK(first == run_suite(Suite::Algebra, o).machine());
  CHECK(parse_suite("bases") == Suite::Bases);
  CHECK_CODE(parse_suite("everything"), InvalidArgument);
}

TEST_CASE("command line") {
  const fs::path dir = scratch();
  const fs::path out = dir / "out.txt";
  {
    std::ofstream(dir / "v.txt") << kVector;
    Document t = from_transform(PoincareTransform::translation(Vec4(0.5, 0, 0, 0)));
    write_document((dir / "t.txt").string(), t);
  }

  CHECK(run("verify clifford --format machine", out) == 0);
  CHECK(slurp(out).find("pass") != std::string::npos);
  CHECK(run("verify nonsense", out) == 2);
  CHECK(run("verify all --kappa 0", out) == 2);
  CHECK(run("verify all --grid 3", out) == 2);
  CHECK(run("", out) == 2);

  const std::string v = (dir / "v.txt").string(), t = (dir / "t.txt").string();
  const std::string moved = (dir / "moved.txt").string(), back = (dir / "back.txt").string();
  REQUIRE(run("transform " + v + " " + t + " -o " + moved, out) == 0);
  const auto mv = to_five_vectors(read_document(moved));
  // v'^5 = v^5 - a_a v^a with a = (0.5,0,0,0).
  CHECK(mv[0](kFifth) == doctest::Approx(1.5));
  CHECK(mv[1](kFifth) == doctest::Approx(1.125));
  REQUIRE(run("transform " + moved + " " + t + " --inverse -o " + back, out) == 0);
  CHECK(slurp(back) == kVector);

  // Malformed input: processing error, not a usage error.
  std::ofstream(dir / "bad.txt") << "fivevec 1\nkind five_vector\ncomponents 5\ndata\n1 2 3\n";
  CHECK(run("transform " + (dir / "bad.txt").string() + " " + t, out) == 1);
  CHECK(slurp(out).find("line") != std::string::npos);

  // Lemma construction from a four-basis file.
  write_document((dir / "fb.txt").string(),
                 from_four_basis_components(Mat4::Identity(), Mat5::Identity(), eta5()));
  REQUIRE(run("basis lemma1 " + (dir / "fb.txt").string(), out) == 0);
  const Document basis = parse_document(slurp(out));
  REQUIRE(basis.find("flags") != nullptr);
  CHECK(basis.find("flags")->find("orthonormal") != std::string::npos);
  write_document((dir / "fb2.txt").string(),
                 from_four_basis_components(Mat4(2.0 * Mat4::Identity()), Mat5::Identity(), eta5()));
  CHECK(run("basis lemma1 " + (dir / "fb2.txt").string(), out) == 1);
  CHECK(slurp(out).find("NotOrthonormalInput") != std::string::npos);
  CHECK(run("basis lemma2 " + (dir / "fb2.txt").string(), out) == 0);

  fs::remove_all(dir);
}
