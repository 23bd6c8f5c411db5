#include "fivevec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fivevec {

ParseError::ParseError(int line, int column, const std::string& what)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

const std::string* Document::find(const std::string& key) const {
  for (const auto& [k, v] : extra)
    if (k == key) return &v;
  return nullptr;
}

void Document::set(const std::string& key, std::string value) {
  for (auto& [k, v] : extra)
    if (k == key) {
      v = std::move(value);
      return;
    }
  extra.emplace_back(key, std::move(value));
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

std::vector<Token> split(const std::string& s, int line, int column0 = 1) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i >= s.size()) break;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    out.push_back({s.substr(start, i - start), line, column0 + static_cast<int>(start)});
  }
  return out;
}

double to_double(const Token& t) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (!t.text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError(t.line, t.column, "not a number: '" + t.text + "'");
  return v;
}

long to_int(const Token& t) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    throw ParseError(t.line, t.column, "not an integer: '" + t.text + "'");
  }
  return v;
}

void expect_count(const std::vector<Token>& toks, std::size_t n, int line) {
  if (toks.size() != n + 1) {
    const int col = toks.size() > n + 1 ? toks[n + 1].column : 1;
    throw ParseError(line, col, "'" + toks[0].text + "' expects " + std::to_string(n) + " value(s)");
  }
}

}  // namespace

Document parse_document(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_magic = false;
  bool have_kind = false;
  bool have_components = false;
  bool have_records = false;
  std::optional<std::array<int, 4>> counts;
  std::optional<Vec4> origin;
  std::optional<Vec4> spacing;
  int counts_line = 0;

  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = split(line, lineno);
    if (toks.empty() || toks[0].text[0] == '#') continue;
    const std::string& key = toks[0].text;
    if (!have_magic) {
      if (key != "fivevec" || toks.size() != 2 || toks[1].text != "1") {
        throw ParseError(lineno, toks[0].column, "expected header 'fivevec 1'");
      }
      have_magic = true;
      continue;
    }
    if (key == "data") {
      if (toks.size() != 1) throw ParseError(lineno, toks[1].column, "'data' takes no values");
      break;
    }
    if (key == "kind") {
      expect_count(toks, 1, lineno);
      doc.kind = toks[1].text;
      have_kind = true;
    } else if (key == "basis") {
      expect_count(toks, 1, lineno);
      try {
        doc.basis = parse_basis_flag(toks[1].text);
      } catch (const Error&) {
        throw ParseError(lineno, toks[1].column, "unknown basis flag '" + toks[1].text + "'");
      }
    } else if (key == "kappa") {
      expect_count(toks, 1, lineno);
      doc.kappa = to_double(toks[1]);
      if (!std::isfinite(doc.kappa)) throw ParseError(lineno, toks[1].column, "kappa must be finite");
    } else if (key == "labels") {
      if (toks.size() != 6) throw ParseError(lineno, toks[0].column, "labels must be 0 1 2 3 5");
      for (int i = 0; i < 5; ++i)
        if (to_int(toks[i + 1]) != kLabels[i]) throw ParseError(lineno, toks[i + 1].column, "labels must be 0 1 2 3 5");
    } else if (key == "records") {
      expect_count(toks, 1, lineno);
      const long r = to_int(toks[1]);
      if (r < 1) throw ParseError(lineno, toks[1].column, "records must be positive");
      doc.records = static_cast<std::size_t>(r);
      have_records = true;
    } else if (key == "components") {
      expect_count(toks, 1, lineno);
      const long c = to_int(toks[1]);
      if (c < 1) throw ParseError(lineno, toks[1].column, "components must be positive");
      doc.components = static_cast<int>(c);
      have_components = true;
    } else if (key == "counts") {
      expect_count(toks, 4, lineno);
      std::array<int, 4> c{};
      for (int i = 0; i < 4; ++i) {
        const long v = to_int(toks[i + 1]);
        if (v < 1) throw ParseError(lineno, toks[i + 1].column, "counts must be positive");
        c[i] = static_cast<int>(v);
      }
      counts = c;
      counts_line = lineno;
    } else if (key == "origin" || key == "spacing") {
      expect_count(toks, 4, lineno);
      Vec4 v;
      for (int i = 0; i < 4; ++i) {
        v(i) = to_double(toks[i + 1]);
        if (!std::isfinite(v(i))) throw ParseError(lineno, toks[i + 1].column, key + " must be finite");
        if (key == "spacing" && !(v(i) > 0.0)) throw ParseError(lineno, toks[i + 1].column, "spacing must be positive");
      }
      (key == "origin" ? origin : spacing) = v;
    } else {
      std::string rest;
      if (toks.size() > 1) rest = line.substr(static_cast<std::size_t>(toks[1].column - 1));
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' || rest.back() == '\r')) rest.pop_back();
      doc.extra.emplace_back(key, rest);
    }
  }
  if (!have_magic) throw ParseError(lineno, 1, "empty file");
  if (!have_kind) throw ParseError(lineno, 1, "missing 'kind'");
  if (!have_components) throw ParseError(lineno, 1, "missing 'components'");
  if (counts) {
    if (have_records) throw ParseError(counts_line, 1, "'records' and 'counts' are exclusive");
    Grid4 g;
    g.counts = *counts;
    if (origin) g.origin = *origin;
    if (spacing) g.spacing = *spacing;
    doc.grid = g;
  } else if (origin || spacing) {
    throw ParseError(lineno, 1, "'origin'/'spacing' need 'counts'");
  }

  const std::size_t expected = doc.expected_size();
  doc.data.reserve(expected);
  while (std::getline(in, line)) {
    ++lineno;
    for (const auto& t : split(line, lineno)) {
      if (doc.data.size() == expected) {
        throw ParseError(t.line, t.column, "more values than the header declares (" + std::to_string(expected) + ")");
      }
      const double v = to_double(t);
      if (!std::isfinite(v)) {
        const std::size_t idx = doc.data.size();
        throw ParseError(t.line, t.column,
                         "non-finite value in sample " + std::to_string(idx / static_cast<std::size_t>(doc.components)) +
                             ", component " + std::to_string(idx % static_cast<std::size_t>(doc.components)));
      }
      doc.data.push_back(v);
    }
  }
  if (doc.data.size() != expected) {
    throw ParseError(lineno, 1, "header declares " + std::to_string(expected) + " values, found " +
                                    std::to_string(doc.data.size()));
  }
  return doc;
}

std::string emit_document(const Document& doc) {
  std::string out = "fivevec 1\n";
  out += "kind " + doc.kind + "\n";
  out += std::string("basis ") + to_string(doc.basis) + "\n";
  out += "kappa " + format_number(doc.kappa) + "\n";
  out += "labels 0 1 2 3 5\n";
  if (doc.grid) {
    const Grid4& g = *doc.grid;
    out += "counts";
    for (int c : g.counts) out += " " + std::to_string(c);
    out += "\norigin";
    for (int i = 0; i < 4; ++i) out += " " + format_number(g.origin(i));
    out += "\nspacing";
    for (int i = 0; i < 4; ++i) out += " " + format_number(g.spacing(i));
    out += "\n";
  } else {
    out += "records " + std::to_string(doc.records) + "\n";
  }
  out += "components " + std::to_string(doc.components) + "\n";
  for (const auto& [k, v] : doc.extra) out += v.empty() ? k + "\n" : k + " " + v + "\n";
  out += "data\n";
  const std::size_t n = static_cast<std::size_t>(doc.components);
  for (std::size_t i = 0; i < doc.data.size(); ++i) {
    out += format_number(doc.data[i]);
    out += (i + 1) % n == 0 ? '\n' : ' ';
  }
  return out;
}

Document read_document(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_document(ss.str());
}

void write_document(const std::string& path, const Document& doc) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  f << emit_document(doc);
  if (!f) throw Error(ErrorCode::InvalidArgument, "write to '" + path + "' failed");
}

namespace {

void require_kind(const Document& doc, const std::string& kind, int components) {
  if (doc.kind != kind) throw Error(ErrorCode::KindMismatch, "expected kind '" + kind + "', got '" + doc.kind + "'");
  if (doc.components != components) {
    throw Error(ErrorCode::KindMismatch, kind + " needs " + std::to_string(components) + " components");
  }
}

std::string join_numbers(const double* p, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (i ? " " : "") + format_number(p[i]);
  return s;
}

Mat5 parse_mat5(const std::string& s, const std::string& key) {
  const auto toks = split(s, 0);
  if (toks.size() != 25) throw Error(ErrorCode::ParseError, "'" + key + "' needs 25 numbers");
  Mat5 m;
  for (int i = 0; i < 25; ++i) m(i / 5, i % 5) = to_double(toks[static_cast<std::size_t>(i)]);
  return m;
}

std::string mat5_string(const Mat5& m) {
  const Eigen::Matrix<double, 5, 5, Eigen::RowMajor> r = m;
  return join_numbers(r.data(), 25);
}

}  // namespace

Document from_five_vectors(const std::vector<Vec5>& v, BasisFlag basis, double kappa, bool forms) {
  Document doc;
  doc.kind = forms ? "five_form" : "five_vector";
  doc.basis = basis;
  doc.kappa = kappa;
  doc.records = v.size();
  doc.components = 5;
  for (const auto& x : v)
    for (int i = 0; i < 5; ++i) doc.data.push_back(x(i));
  return doc;
}

std::vector<Vec5> to_five_vectors(const Document& doc) {
  if (doc.kind != "five_vector" && doc.kind != "five_form") {
    throw Error(ErrorCode::KindMismatch, "expected five_vector or five_form, got '" + doc.kind + "'");
  }
  require_kind(doc, doc.kind, 5);
  std::vector<Vec5> out(doc.data.size() / 5);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Eigen::Map<const Vec5>(doc.data.data() + 5 * i);
  return out;
}

Document from_transform(const PoincareTransform& t) {
  Document doc;
  doc.kind = "poincare_transform";
  doc.components = 20;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) doc.data.push_back(t.lambda(r, c));
  for (int i = 0; i < 4; ++i) doc.data.push_back(t.a(i));
  return doc;
}

PoincareTransform to_transform(const Document& doc) {
  require_kind(doc, "poincare_transform", 20);
  if (doc.data.size() != 20) throw Error(ErrorCode::KindMismatch, "poincare_transform holds a single record");
  PoincareTransform t;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) t.lambda(r, c) = doc.data[static_cast<std::size_t>(4 * r + c)];
  for (int i = 0; i < 4; ++i) t.a(i) = doc.data[static_cast<std::size_t>(16 + i)];
  t.validate();
  return t;
}

Document from_m_field(const MTensorField& m) {
  const FieldOnGrid f = m.to_field();
  Document doc;
  doc.kind = "m_tensor_field";
  doc.basis = m.basis;
  doc.kappa = m.kappa;
  doc.grid = m.grid;
  doc.components = 100;
  doc.data = f.values;
  return doc;
}

MTensorField to_m_field(const Document& doc) {
  require_kind(doc, "m_tensor_field", 100);
  if (!doc.grid) throw Error(ErrorCode::KindMismatch, "m_tensor_field needs a grid");
  FieldOnGrid f(*doc.grid, 100, doc.basis);
  f.values = doc.data;
  return MTensorField::from_field(f, doc.kappa);
}

Document from_four_basis_bivectors(const std::array<Bivector5, 4>& e, const Mat5& h) {
  Document doc;
  doc.kind = "four_basis";
  doc.records = 4;
  doc.components = 25;
  doc.set("representation", "bivector");
  doc.set("metric", mat5_string(h));
  for (const auto& b : e) {
    const Eigen::Matrix<double, 5, 5, Eigen::RowMajor> r = b.matrix();
    doc.data.insert(doc.data.end(), r.data(), r.data() + 25);
  }
  return doc;
}

Document from_four_basis_components(const Mat4& u, const Mat5& frame, const Mat5& h) {
  Document doc;
  doc.kind = "four_basis";
  doc.records = 4;
  doc.components = 4;
  doc.set("representation", "components");
  doc.set("frame", mat5_string(frame));
  doc.set("metric", mat5_string(h));
  // record a holds U_a^mu
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) doc.data.push_back(u(mu, a));
  return doc;
}

FourBasisInput to_four_basis(const Document& doc) {
  if (doc.kind != "four_basis") throw Error(ErrorCode::KindMismatch, "expected kind 'four_basis', got '" + doc.kind + "'");
  if (doc.grid || doc.records != 4) throw Error(ErrorCode::KindMismatch, "four_basis holds exactly 4 records");
  FourBasisInput in;
  if (const auto* h = doc.find("metric")) in.h = parse_mat5(*h, "metric");
  const auto* rep = doc.find("representation");
  const std::string mode = rep ? *rep : (doc.components == 25 ? "bivector" : "components");
  if (mode == "bivector") {
    require_kind(doc, "four_basis", 25);
    for (int a = 0; a < 4; ++a) {
      Mat5 m;
      for (int i = 0; i < 25; ++i) m(i / 5, i % 5) = doc.data[static_cast<std::size_t>(25 * a + i)];
      in.e[a] = Bivector5(m);
    }
  } else if (mode == "components") {
    require_kind(doc, "four_basis", 4);
    const auto* fr = doc.find("frame");
    const Basis5 frame(fr ? parse_mat5(*fr, "frame") : Mat5::Identity());
    for (int a = 0; a < 4; ++a) {
      const Vec4 u(doc.data[static_cast<std::size_t>(4 * a)], doc.data[static_cast<std::size_t>(4 * a + 1)],
                   doc.data[static_cast<std::size_t>(4 * a + 2)], doc.data[static_cast<std::size_t>(4 * a + 3)]);
      in.e[a] = bivector_from_four(FourVector{u, {}}, frame);
    }
  } else {
    throw Error(ErrorCode::KindMismatch, "unknown four_basis representation '" + mode + "'");
  }
  return in;
}

Document from_basis5(const Basis5& b, const BasisFlags& flags, const LemmaResidual& residual) {
  Document doc;
  doc.kind = "basis5";
  doc.records = 1;
  doc.components = 25;
  doc.set("flags", std::string(flags.standard ? "standard " : "") + (flags.regular ? "regular " : "") +
                       (flags.orthonormal ? "orthonormal" : ""));
  auto& f = doc.extra.back().second;
  while (!f.empty() && f.back() == ' ') f.pop_back();
  if (f.empty()) f = "none";
  doc.set("residual_wedge", format_number(residual.wedge));
  doc.set("residual_gram", format_number(residual.gram));
  const Eigen::Matrix<double, 5, 5, Eigen::RowMajor> r = b.matrix();
  doc.data.assign(r.data(), r.data() + 25);
  return doc;
}

}  // namespace fivevec
