#pragma once
// The Gray category with duals extracted from a defect TQFT: sliced diagrams
// for 1- and 2-morphisms, engine payloads for 3-morphisms, axiom checks.
#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "dtqft/defect_data.hpp"
#include "dtqft/fusion.hpp"
#include "dtqft/strata.hpp"

namespace dtqft {

enum class Engine { Triv, StateSum };
std::string to_string(Engine e);
Engine parse_engine(const std::string& s);

// ---------------------------------------------------------------- 1-morphisms

// Entries run left to right along the box axis; source is the 3-stratum left
// of the first entry, target the one right of the last.
struct OneMorphismWord {
  std::string source = "*", target = "*";
  LinearWord entries;

  bool operator==(const OneMorphismWord&) const = default;
};

OneMorphismWord make_word(const LinearWord& entries, const std::string& object = "*");
ValidationReport validate_word(const DefectData& dd, const OneMorphismWord& w);
OneMorphismWord box_compose(const OneMorphismWord& a, const OneMorphismWord& b);
OneMorphismWord hash_dual(const OneMorphismWord& a);

// ---------------------------------------------------------------- 2-morphisms

enum class EventKind { Vertex, Cap, Cup };
std::string to_string(EventKind k);

struct LayerEvent {
  EventKind kind = EventKind::Vertex;
  std::string d1;                  // vertex
  LinearWord in_word, out_word;    // vertex
  int splitting = -1;              // index into splittings(); -1 if unset
  SignedLabel label;               // cap creates (x, x#), cup deletes it
  LinearWord left, right;          // whiskers

  LinearWord lower() const;  // local word below the event
  LinearWord upper() const;
  LinearWord before() const { return concat(lower()); }
  LinearWord after() const { return concat(upper()); }
  // cyclic word of a vertex read as out followed by in#
  LinearWord vertex_word() const;

  bool operator==(const LayerEvent& o) const;

 private:
  LinearWord concat(const LinearWord& mid) const;
};

LayerEvent vertex_event(const std::string& d1, const LinearWord& in, const LinearWord& out,
                        const LinearWord& left = {}, const LinearWord& right = {});
LayerEvent cap_event(const SignedLabel& x, const LinearWord& left = {}, const LinearWord& right = {});
LayerEvent cup_event(const SignedLabel& x, const LinearWord& left = {}, const LinearWord& right = {});

// layers run from source to target along the otimes axis
struct TwoMorphismDiagram {
  OneMorphismWord source, target;
  std::vector<LayerEvent> layers;

  bool operator==(const TwoMorphismDiagram&) const = default;
  int num_vertices() const;
};

TwoMorphismDiagram identity_diagram(const OneMorphismWord& a);
// one layer; the diagram's words come from the event
TwoMorphismDiagram single_layer(const LayerEvent& e, const std::string& object = "*");
// structural check (word chain); validate_diagram adds D1 membership
ValidationReport validate_diagram_structure(const TwoMorphismDiagram& x);
ValidationReport validate_diagram(const DefectData& dd, const TwoMorphismDiagram& x);

TwoMorphismDiagram whisker_left(const OneMorphismWord& a, const TwoMorphismDiagram& x);
TwoMorphismDiagram whisker_right(const TwoMorphismDiagram& x, const OneMorphismWord& a);
// x after y: the layers of y, then those of x
TwoMorphismDiagram otimes_compose(const TwoMorphismDiagram& x, const TwoMorphismDiagram& y);
// x box y = (x box 1) otimes (1 box y): y acts first
TwoMorphismDiagram box_compose(const TwoMorphismDiagram& x, const TwoMorphismDiagram& y);
TwoMorphismDiagram dagger_dual(const TwoMorphismDiagram& x);
// coev_a : 1 -> a box a#, nested caps
TwoMorphismDiagram fold(const OneMorphismWord& a);
// ev_a = (coev_{a#})^dagger : a# box a -> 1
TwoMorphismDiagram ev_fold(const OneMorphismWord& a);
// (1_a box ev_a) otimes (coev_a box 1_a), the source of the triangulator
TwoMorphismDiagram zigzag(const OneMorphismWord& a);

// ---------------------------------------------------------------- lines and spheres

// Lines of a diagram: maximal strands through caps and cups.
struct DiagramLines {
  int num_lines = 0;
  std::vector<std::string> label;
  std::vector<int> bottom, top;                // line at each boundary position
  std::vector<std::vector<int>> layer_lines;   // vertex: in legs then out legs; cap/cup: one
};
DiagramLines diagram_lines(const TwoMorphismDiagram& x);

// The sphere S_{X,Y}: X and Y glued along their common boundary words.
// A sheet is a component of the glued line set.
struct SphereSheets {
  int num_sheets = 0;
  std::vector<std::string> label;
  std::vector<int> x_sheet, y_sheet;  // line -> sheet
};
SphereSheets sphere_sheets(const TwoMorphismDiagram& x, const TwoMorphismDiagram& y);

// X in the back disc, Y in the front: X vertices read f, Y vertices f#.
DecoratedSurface glue_sphere(const TwoMorphismDiagram& x, const TwoMorphismDiagram& y);

// ---------------------------------------------------------------- 3-morphisms

struct GrayModel {
  Engine engine = Engine::Triv;
  const FusionCategory* cat = nullptr;
  const DefectData* dd = nullptr;  // optional; validation only
};

// Engine triv: one matrix per colouring of the source lines followed by the
// target lines (consistent along the sphere), rows over the target's vertex
// spaces and columns over the source's, Kronecker factors in layer order;
// absent colourings are zero. Engine statesum: a scalar times
// the distinguished element.
struct ThreeMorphism {
  Engine engine = Engine::Triv;
  TwoMorphismDiagram source, target;
  std::map<std::vector<int>, Eigen::MatrixXcd> blocks;
  cplx scalar{1.0, 0.0};
};

struct HomSpace {
  Engine engine = Engine::Triv;
  int dim = 0;
  // triv: line colourings (source then target) with nonzero blocks, (rows, cols)
  std::vector<std::vector<int>> colourings;
  std::vector<std::pair<int, int>> shapes;
};

HomSpace hom_space(const GrayModel& m, const TwoMorphismDiagram& x, const TwoMorphismDiagram& y);
// the k-th basis element of hom_space(x, y)
ThreeMorphism hom_basis_element(const GrayModel& m, const TwoMorphismDiagram& x,
                                const TwoMorphismDiagram& y, int k);
// dimension of H_c at a vertex layer, per sheet colouring of the sphere
int vertex_space_dim(const FusionCategory& cat, const LayerEvent& e, const std::vector<int>& leg_colours);

ThreeMorphism identity3(const GrayModel& m, const TwoMorphismDiagram& x);
ThreeMorphism circ_compose(const ThreeMorphism& psi, const ThreeMorphism& phi);
// phi after psi along otimes
ThreeMorphism otimes_compose(const GrayModel& m, const ThreeMorphism& phi, const ThreeMorphism& psi);
ThreeMorphism whisker_left(const GrayModel& m, const OneMorphismWord& a, const ThreeMorphism& phi);
ThreeMorphism whisker_right(const GrayModel& m, const ThreeMorphism& phi, const OneMorphismWord& a);
// (phi box 1) otimes (1 box psi)
ThreeMorphism box_compose(const GrayModel& m, const ThreeMorphism& phi, const ThreeMorphism& psi);
ThreeMorphism scale(const ThreeMorphism& phi, cplx s);
ThreeMorphism add(const ThreeMorphism& a, const ThreeMorphism& b);
// mate along the dagger duals: X^dagger -> Y^dagger from Y -> X
ThreeMorphism dagger3(const GrayModel& m, const ThreeMorphism& phi);

// sigma_{X,Y} : (X box 1) otimes (1 box Y) -> (1 box Y) otimes (X box 1)
ThreeMorphism tensorator(const GrayModel& m, const TwoMorphismDiagram& x, const TwoMorphismDiagram& y);
ThreeMorphism tensorator_inverse(const GrayModel& m, const TwoMorphismDiagram& x,
                                 const TwoMorphismDiagram& y);
// tau_a : zigzag(a) -> 1_a and its inverse
ThreeMorphism triangulator(const GrayModel& m, const OneMorphismWord& a);
ThreeMorphism triangulator_inverse(const GrayModel& m, const OneMorphismWord& a);
// coev_X : 1 -> X^dagger otimes X, ev_X : X otimes X^dagger -> 1
ThreeMorphism coev3(const GrayModel& m, const TwoMorphismDiagram& x);
ThreeMorphism ev3(const GrayModel& m, const TwoMorphismDiagram& x);

// largest entry of a - b; infinity when the boundaries differ
double distance(const ThreeMorphism& a, const ThreeMorphism& b);

// ---------------------------------------------------------------- 3d diagrams

enum class MovieEventKind { Insert, Crossing, Coev, Ev, Triangulator, TriangulatorInverse };
std::string to_string(MovieEventKind k);

// One step of a movie: replaces layers [at, at + count) of the current frame.
// Insert applies basis element `basis` of the local hom space onto `layers`;
// Crossing applies the tensorator to layers at, at+1; Coev / Ev create or
// remove `layers` followed by their dagger; the triangulator events straighten
// or create the zigzag of `word` (offset strands to its left).
struct MovieEvent {
  MovieEventKind kind = MovieEventKind::Insert;
  int at = 0;
  int count = 0;
  std::vector<LayerEvent> layers;
  OneMorphismWord word;
  int offset = 0;  // strands left of `word` when creating a zigzag
  int basis = 0;
  cplx coefficient{1.0, 0.0};
};

struct Movie {
  TwoMorphismDiagram start;
  std::vector<MovieEvent> events;
};

// frames of a movie, start first
std::vector<TwoMorphismDiagram> movie_frames(const Movie& mv);
ThreeMorphism evaluate_3d_diagram(const GrayModel& m, const Movie& mv);

// ---------------------------------------------------------------- checks

struct AxiomReport {
  struct Item {
    std::string axiom;
    std::string instance;
    double residual = 0.0;
    bool ok = true;
  };
  struct Summary {
    int instances = 0;
    int failures = 0;
    double max_residual = 0.0;
  };
  std::vector<Item> items;
  std::map<std::string, Summary> per_axiom;
  int instances = 0;
  double max_residual = 0.0;

  bool clean() const;
  void record(std::string axiom, std::string instance, double residual, double tol);
};

struct GrayCheckOptions {
  int sample_size = 0;          // 0: full enumeration
  double tolerance = 1e-9;
  bool wrong_tensorator = false;  // replace the tensorator by the identity
  unsigned seed = 1;
};

AxiomReport check_gray_axioms(const GrayModel& m, const GrayCheckOptions& opt);
AxiomReport check_model_equivalence(const GrayModel& m, const GrayCheckOptions& opt);

// group element of the model functor on a 1-morphism, found from the engine
std::string one_morphism_invariant(const GrayModel& m, const OneMorphismWord& a);

// small 2-morphisms used by the checks: identities, single vertices, folds
std::vector<TwoMorphismDiagram> sample_two_morphisms(const DefectData& dd, int max_word_len);

}  // namespace dtqft
