#pragma once
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dtqft/defect_data.hpp"

namespace dtqft {

// ---------------------------------------------------------------- surfaces

struct SurfaceEdge {
  std::string label;
  int tail = -1, head = -1;  // both -1: a vertex-free circle
  bool circle() const { return tail < 0; }
};

// dart id = 2*edge + (at_tail ? 0 : 1)
struct SurfaceDart {
  int edge = 0;
  bool at_tail = true;
  int id() const { return 2 * edge + (at_tail ? 0 : 1); }
  static SurfaceDart from_id(int d) { return {d / 2, d % 2 == 0}; }
  bool operator==(const SurfaceDart&) const = default;
};

// Face keys: map faces by the smallest dart of their orbit, the right (2e) and
// left (2e+1) sides of a circle e, and -1-v for an isolated vertex v.
struct Region {
  std::string label = "*";
  std::vector<int> faces;  // empty: a whole sphere without strata
};

class DecoratedSurface {
 public:
  std::vector<std::vector<SurfaceDart>> rotation;  // per vertex, ccw
  std::vector<std::string> vertex_label;           // d1 ids, may be empty
  std::vector<SurfaceEdge> edges;
  std::vector<Region> regions;

  int num_vertices() const { return static_cast<int>(rotation.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int add_vertex(std::vector<SurfaceDart> rot = {}, std::string label = "");
  int add_edge(std::string label, int tail, int head);

  LinearWord vertex_word(int v) const;
  int vertex_of(int dart) const;  // -1 for circle darts
  int sigma(int dart) const;      // ccw successor at its vertex
  int phi(int dart) const { return sigma(dart ^ 1); }  // face walk, face on the right

  // map faces as dart orbits, keyed by smallest dart
  std::vector<std::vector<int>> map_faces() const;
  int face_key(int dart) const;
  std::vector<int> all_face_keys() const;
  int region_of_face(int key) const;  // -1 if unassigned
  // regions to the right / left of a dart direction
  int region_right(int dart) const { return region_of_face(face_key(dart)); }

  // regions must be filled before validation; a connected map gets one
  // region per face
  void default_regions(const std::string& label = "*");

  int euler_characteristic() const;
  // number of closed surface components
  int num_components() const;
  std::vector<int> component_euler() const;
  bool all_spheres() const;
  // connected graph, no circles, no isolated vertices, one face per region
  bool is_fine() const;
  int num_free_circles() const;
};

using SphereGraphHandle = DecoratedSurface;

ValidationReport validate_surface_structure(const DecoratedSurface& s);
ValidationReport validate_surface(const DefectData& dd, const DecoratedSurface& s);

// orientation reversal: every rotation reversed
DecoratedSurface reversed(const DecoratedSurface& s);

// refine to a fine surface: vertices on circles, neutral edges joining the
// components of a region, neutral loops at isolated vertices. Identity on
// fine surfaces.
DecoratedSurface fine_surface(const DecoratedSurface& s, const std::string& neutral);

// canonical string of the decorated map, for isomorphism tests
std::string surface_signature(const DecoratedSurface& s);

DecoratedSurface bare_sphere();
DecoratedSurface circle_sphere(const std::string& label);
// two vertices joined by edges (labels) in the given ccw order at vertex 0
DecoratedSurface theta_sphere(const std::vector<std::string>& labels);

// ---------------------------------------------------------------- bordisms

struct Incidence {
  int stratum = 0;  // 2-stratum id
  Sign sign = Sign::Plus;
  bool operator==(const Incidence&) const = default;
  auto operator<=>(const Incidence&) const = default;
};
using IncidenceWord = std::vector<Incidence>;

IncidenceWord hash_word(const IncidenceWord& w);

struct Stratum3 {
  std::string label = "*";
  bool ball = true;
};

struct Stratum2 {
  std::string label;
  int chi = 1;
  int neg = -1, pos = -1;  // 3-strata on the negative / positive side
  int side(Sign s) const { return s == Sign::Plus ? pos : neg; }
};

struct Stratum1 {
  std::string d1;      // may be empty for oracle families
  IncidenceWord word;  // seen from the start, looking along the stratum
  int start = -1, end = -1;  // 0-strata; both -1 for a closed loop
  int anchor = -1;           // 3-stratum, for an empty word
  bool closed() const { return start < 0; }
};

// end id = 2*e + (0 at start, 1 at end)
struct Corner {
  int end_a = 0, slot_a = 0, end_b = 0, slot_b = 0;
};

struct Stratum0 {
  bool boundary = false;
  int component = -1, surface_vertex = -1;  // boundary only
  std::vector<Corner> corners;              // interior only
};

struct BoundaryComponent {
  std::string name;
  bool incoming = true;
  DecoratedSurface surface;
  std::vector<int> vertex_stratum;  // surface vertex -> 0-stratum
  std::vector<int> edge_stratum;    // surface edge -> 2-stratum
  std::vector<int> region_stratum;  // surface region -> 3-stratum
};

class StratifiedBordism {
 public:
  std::vector<Stratum0> s0;
  std::vector<Stratum1> s1;
  std::vector<Stratum2> s2;
  std::vector<Stratum3> s3;
  std::vector<BoundaryComponent> boundary;

  bool closed_manifold() const { return boundary.empty(); }
  // word of the end seen from its 0-stratum looking along the 1-stratum
  IncidenceWord seen_word(int end) const;
  int end_vertex(int end) const;
  // ends at a 0-stratum, in increasing end id
  std::vector<int> ends_at(int v) const;
  std::vector<int> interior_vertices() const;
  bool touches_boundary_2(int r) const;
};

ValidationReport validate_bordism_structure(const StratifiedBordism& b);
ValidationReport validate_bordism(const DefectData& dd, const StratifiedBordism& b);
// fine in the sense used by the state-sum engine
ValidationReport check_fine(const StratifiedBordism& b);

struct EdgeLink {
  CyclicWord word;  // labels are 2-stratum ids
  int anchor = -1;  // 3-stratum when the word is empty
};
EdgeLink edge_link(const StratifiedBordism& b, int one_stratum);

// link of an interior 0-stratum; edge_stratum gets the 2-stratum of each edge
SphereGraphHandle vertex_link_graph(const StratifiedBordism& b, int vertex,
                                    std::vector<int>* edge_stratum = nullptr);

// ---------------------------------------------------------------- builders

// closed oriented triangulated 3-manifold; labels: triangle -> d2 label
struct Triangulation {
  int num_vertices = 0;
  std::vector<std::array<int, 4>> tets;
};
StratifiedBordism triangulation_bordism(const Triangulation& t, const std::string& neutral,
                                        const std::vector<std::pair<std::array<int, 3>,
                                                                    std::string>>& labels = {});
Triangulation boundary_delta4();
// boundary of the tetrahedron times a circle of `layers` >= 3 layers
Triangulation sphere_times_circle(int layers);

// standard-form product Sigma x [0,1] (no interior 0-strata)
StratifiedBordism product_cylinder(const DecoratedSurface& s);
// fine cylinder over fine_surface(s) with a neutral middle slice
StratifiedBordism cylinder(const DecoratedSurface& s, const std::string& neutral);
// cone over a sphere (out-boundary)
StratifiedBordism linear_fill(const SphereGraphHandle& s);
// S^2 x S^1 whose S^2 fibre carries `label` (split in two discs by a neutral line)
StratifiedBordism sphere_fiber_product(const std::string& label, const std::string& neutral);
// glue the out-boundary component `out_comp` of a to the in-boundary `in_comp` of b
StratifiedBordism glue(const StratifiedBordism& a, int out_comp, const StratifiedBordism& b,
                       int in_comp);
// glue an outgoing component of b to an incoming one carrying the same surface
StratifiedBordism self_glue(const StratifiedBordism& b, int out_comp, int in_comp);
// disjoint union
StratifiedBordism disjoint_union(const StratifiedBordism& a, const StratifiedBordism& b);
// mapping torus of the identity: the out boundary of cylinder(s) glued to its in boundary
StratifiedBordism circle_product(const DecoratedSurface& s, const std::string& neutral);

// ---------------------------------------------------------------- refinement

enum class RefineMove { EdgeSubdivide, FaceStar, CellCone };
std::string to_string(RefineMove m);
RefineMove parse_refine_move(const std::string& s);

StratifiedBordism refine(const StratifiedBordism& b, RefineMove move, int site,
                         const std::string& neutral);
// sites valid for a move
std::vector<int> refine_sites(const StratifiedBordism& b, RefineMove move);

}  // namespace dtqft
