#pragma once

// Text file format shared by every object the CLI reads or writes.
//
//   fivevec 1
//   kind five_vector
//   basis P
//   kappa 1
//   labels 0 1 2 3 5
//   records 1            (or: counts/origin/spacing for grid fields)
//   components 5
//   data
//   <records x components numbers, one record per line>
//
// Unknown header keys are kept in order and written back unchanged. Numbers
// are written with 17 significant digits so parse(emit(x)) is bit exact.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fivevec/bases.hpp"
#include "fivevec/grid.hpp"
#include "fivevec/poincare.hpp"
#include "fivevec/stress_energy.hpp"

namespace fivevec {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct Document {
  std::string kind;
  BasisFlag basis = BasisFlag::O;
  double kappa = 1.0;
  std::optional<Grid4> grid;
  std::size_t records = 1;
  int components = 0;
  std::vector<std::pair<std::string, std::string>> extra;
  std::vector<double> data;

  std::size_t expected_size() const { return (grid ? grid->size() : records) * static_cast<std::size_t>(components); }
  const std::string* find(const std::string& key) const;
  void set(const std::string& key, std::string value);
};

Document parse_document(const std::string& text);
std::string emit_document(const Document& doc);

Document read_document(const std::string& path);
void write_document(const std::string& path, const Document& doc);

/// 17 significant digits.
std::string format_number(double v);

// Typed views. Each `to_*` throws KindMismatch when the kind differs.

Document from_five_vectors(const std::vector<Vec5>& v, BasisFlag basis, double kappa, bool forms = false);
std::vector<Vec5> to_five_vectors(const Document& doc);

Document from_transform(const PoincareTransform& t);
PoincareTransform to_transform(const Document& doc);

Document from_m_field(const MTensorField& m);
MTensorField to_m_field(const Document& doc);

/// Input for the lemma constructions: four-vectors either as 25-component
/// bivectors or as 4 components against a frame, plus an optional metric.
struct FourBasisInput {
  std::array<Bivector5, 4> e;
  Mat5 h = eta5();
};

Document from_four_basis_bivectors(const std::array<Bivector5, 4>& e, const Mat5& h);
Document from_four_basis_components(const Mat4& u, const Mat5& frame, const Mat5& h);
FourBasisInput to_four_basis(const Document& doc);

Document from_basis5(const Basis5& b, const BasisFlags& flags, const LemmaResidual& residual);

}  // namespace fivevec
