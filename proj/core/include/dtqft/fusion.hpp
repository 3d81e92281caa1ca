#pragma once
#include <array>
#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dtqft/defect_data.hpp"

namespace dtqft {

using cplx = std::complex<double>;

struct Simple {
  std::string id;
  int grade = 0;  // group element index
  int dual = 0;
  double qdim = 1.0;
};

// F^{abc}_d[e,f]: ((a b)_e c)_d -> (a (b c)_f)_d
using FIndex = std::array<int, 6>;  // a, b, c, d, e, f

class FusionCategory {
 public:
  std::string name;
  GroupTable group;
  std::vector<Simple> simples;
  int unit = 0;
  std::vector<cplx> pivotal;

  void set_fusion(int a, int b, int c);  // N_{ab}^c = 1
  bool N(int a, int b, int c) const { return fusion_[idx3(a, b, c)] != 0; }
  const std::vector<int>& channels(int a, int b) const { return channels_[a * n() + b]; }

  bool admissible(const FIndex& t) const;
  cplx F(const FIndex& t) const;  // 0 if inadmissible
  cplx F(int a, int b, int c, int d, int e, int f) const { return F({a, b, c, d, e, f}); }
  void set_F(const FIndex& t, cplx v) { fsym_[t] = v; }
  cplx default_F = 1.0;

  int n() const { return static_cast<int>(simples.size()); }
  int dual(int a) const { return simples[a].dual; }
  double qdim(int a) const { return simples[a].qdim; }
  int grade(int a) const { return simples[a].grade; }
  int index(const std::string& id) const;  // LabelError
  std::vector<int> simples_of_grade(int g) const;

  // must be called after simples are set and before set_fusion
  void init_tables();
  const std::map<FIndex, cplx>& explicit_F() const { return fsym_; }

 private:
  std::size_t idx3(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * n() + b) * n() + c;
  }
  std::vector<char> fusion_;
  std::vector<std::vector<int>> channels_;
  std::map<FIndex, cplx> fsym_;
};

struct CategoryCheck {
  ValidationReport report;
  double pentagon_residual = 0.0;
  double unit_residual = 0.0;
  double sphericality_residual = 0.0;
  double rotation_residual = 0.0;
  double unitarity_residual = 0.0;
  double dimension_residual = 0.0;
};

CategoryCheck check_category(const FusionCategory& cat, double tol);
inline ValidationReport validate_category(const FusionCategory& cat, double tol) {
  return check_category(cat, tol).report;
}

// (simple index, sign); the object is the simple for +, its dual for -
struct SignedSimple {
  int simple = 0;
  Sign sign = Sign::Plus;
  bool operator==(const SignedSimple&) const = default;
  auto operator<=>(const SignedSimple&) const = default;
};
using SignedSimpleWord = std::vector<SignedSimple>;

SignedSimpleWord hash_word(const SignedSimpleWord& w);
SignedSimpleWord rotate_left(const SignedSimpleWord& w, std::size_t k);

inline int object_of(const FusionCategory& cat, const SignedSimple& x) {
  return x.sign == Sign::Plus ? x.simple : cat.dual(x.simple);
}

int hom_dimension(const FusionCategory& cat, const SignedSimpleWord& w);
double global_dimension_neutral(const FusionCategory& cat);

// left-combed tree: k[0] = x_1, k[i] in k[i-1] (x) x_{i+1}, k[m-2] = dual(x_m)
struct HomSpaceBasis {
  SignedSimpleWord word;
  std::vector<std::vector<int>> trees;
  int dim() const { return static_cast<int>(trees.size()); }
};

HomSpaceBasis hom_basis(const FusionCategory& cat, const SignedSimpleWord& w);

using Matrix = std::vector<std::vector<cplx>>;  // row-major, small

struct EdgePairing {
  Matrix ev;    // ev[i][j] = <tree i of w, tree j of w^#>
  Matrix coev;  // inverse of ev
};

EdgePairing edge_pairing(const FusionCategory& cat, const SignedSimpleWord& w);

// Coloured graph on the 2-sphere as a rotation system.
struct ColoredSphereGraph {
  struct Edge {
    int tail = 0, head = 0;
    int colour = 0;  // object flowing tail -> head
  };
  struct Dart {
    int edge = 0;
    bool at_tail = true;
  };
  std::vector<std::vector<Dart>> rotation;  // per vertex, ccw from the word start
  std::vector<Edge> edges;
  std::vector<int> free_loops;  // colours of vertex-free circles

  SignedSimpleWord vertex_word(int v) const;
  int euler_defect() const;  // 0 iff every component is planar
};

// Values on all tuples of basis trees, row-major with vertex 0 most significant.
struct GraphValue {
  std::vector<int> dims;
  std::vector<cplx> values;
};

GraphValue evaluate_sphere_graph(const FusionCategory& cat, const ColoredSphereGraph& g);

// Evaluate with one fixed tree per vertex.
cplx evaluate_sphere_graph_at(const FusionCategory& cat, const ColoredSphereGraph& g,
                              const std::vector<HomSpaceBasis>& bases,
                              const std::vector<int>& choice);

}  // namespace dtqft
