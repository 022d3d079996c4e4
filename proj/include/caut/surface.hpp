#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "caut/cluster_aut.hpp"
#include "caut/seed.hpp"

namespace caut {

// ---------------------------------------------------------------------------
// marked surfaces

struct MarkedSurface {
    int genus = 0;
    std::vector<int> boundary; // marked-point count per boundary component
    int punctures = 0;
    int rank = 0;

    int boundary_points() const;
};

// Validates the exclusions (sphere with <= 3 punctures, disc with <= 3 marked
// points, once-punctured disc with one marked point) and computes the rank
// n = 6g + 3b + 3p + c - 6.
MarkedSurface make_surface(int genus, const std::vector<int>& boundary, int punctures);

// ---------------------------------------------------------------------------
// arcs

enum class Tag { plain, notched };

enum class Family { polygon, annulus, punctured_disc, twice_punctured_disc, abstract_complex };

// Family-specific arc coordinates.
//
// polygon (m vertices):       chord {a,b}, non-adjacent, stored a < b
// annulus (p outer, q inner): out_chord (i,j) with disc side the vertices
//                             strictly between i and j in increasing index
//                             order; in_chord (j,j') likewise; bridge (i,j,w)
//                             from outer i to inner j, cover lift
//                             i/p -> j/q + w; loop_out(i) / loop_in(j) based
//                             at a boundary vertex and encircling the hole
// punctured disc (c vertices): chord (a,b) with the punctureless side the
//                             vertices strictly between a and b in increasing
//                             order; radius (i, tag); loop (i) in ideal views
// abstract complexes:         opaque arc ids
struct ArcCoord {
    enum class Kind {
        poly_chord,
        ann_out,
        ann_in,
        ann_bridge,
        ann_loop_out,
        ann_loop_in,
        pd_chord,
        pd_radius,
        pd_loop,
        abstract_arc
    };
    Kind kind = Kind::abstract_arc;
    int a = 0, b = 0, w = 0;
    Tag tag = Tag::plain;

    bool operator==(const ArcCoord& o) const {
        return kind == o.kind && a == o.a && b == o.b && w == o.w && tag == o.tag;
    }
    bool operator<(const ArcCoord& o) const;
    std::string to_string() const;
};

// Minimal crossing number of the underlying untagged arcs.
int crossing_number(const MarkedSurface& s, const ArcCoord& x, const ArcCoord& y);
// Tagged compatibility (zero crossing plus the tag rules at shared punctures).
bool compatible(const MarkedSurface& s, const ArcCoord& x, const ArcCoord& y);
// Tagged representative of an ordinary arc: loops cutting out a once-punctured
// monogon become notched radii, everything else is tagged plain.
ArcCoord iota(const ArcCoord& arc);

// ---------------------------------------------------------------------------
// triangulations

struct Side {
    bool boundary = false;
    int idx = 0;
    bool operator==(const Side& o) const { return boundary == o.boundary && idx == o.idx; }
};

// Non-self-folded ideal triangle; sides listed in clockwise order.
struct Face {
    std::array<Side, 3> s;
};

struct Triangulation {
    MarkedSurface surface;
    Family family = Family::abstract_complex;
    std::vector<ArcCoord> arcs; // tagged arcs for coordinate families
    std::vector<Face> faces;    // ideal faces, self-folded ones excluded
    std::vector<std::pair<int, int>> self_folded; // (loop position, radius position)
    int boundary_segment_count = 0;

    int n() const { return static_cast<int>(arcs.size()); }
    std::string key() const; // canonical serialization
};

// constructors
Triangulation polygon_fan(int m);
Triangulation annulus_std(int p, int q);
Triangulation punctured_disc_std(int c, int p); // p = 1 (fan + self-folded) or 2 (pocket base)
Triangulation figure2_left();
Triangulation figure2_right();
Triangulation markov_torus();
// abstract complex from explicit data (faces clockwise)
Triangulation abstract_triangulation(const MarkedSurface& s, int narcs,
                                     const std::vector<Face>& faces,
                                     const std::vector<std::pair<int, int>>& self_folded,
                                     int boundary_segments);

// Signed adjacency matrix with the self-folded radius/loop substitution.
Quiver b_matrix(const Triangulation& t);

// Flip of the arc at the given position. Coordinate families flip tagged
// arcs (always defined); abstract complexes flip ideal arcs and refuse the
// radius of a self-folded triangle.
Triangulation flip(const Triangulation& t, int pos);

// Toggle all tags at puncture z.
Triangulation tag_toggle(const Triangulation& t, int z);

// ---------------------------------------------------------------------------
// labeled exploration: triangulations and seeds in lockstep

struct LabeledExploration {
    Triangulation base;
    ExchangeGraph graph;
    std::map<std::string, RationalFn> arc_var;      // arc key -> cluster variable
    std::map<std::string, std::string> tri_cluster; // triangulation key -> cluster key
    bool complete = false;

    const RationalFn& variable_of(const ArcCoord& arc) const;
};

LabeledExploration explore_labeled(const Triangulation& base, int node_cap = kDefaultNodeCap,
                                   int depth_cap = kDefaultDepthCap);

// ---------------------------------------------------------------------------
// mapping classes

struct GenPower {
    std::string name;
    int power = 1;
};

using Word = std::vector<GenPower>;

// A mapping class as a word in the named generators of the family. Equality
// is decided by the action on the base triangulation (for the twice-punctured
// disc, by the normal form in the presentation of its mapping class group).
struct MappingClass {
    Family family = Family::abstract_complex;
    Word word;
};

struct MarkedMappingClass {
    MappingClass base;
    std::set<int> punctures; // toggled puncture ids
};

// Named generators: polygon "rot"; annulus "r1", "r2" (+ "swap" for p = q);
// once-punctured disc "rot"; twice-punctured disc "r", "s".
std::vector<std::string> mcg_generator_names(const Triangulation& base);
MappingClass mcg_generator(const Triangulation& base, const std::string& name, int power = 1);
MappingClass mc_identity(const Triangulation& base);
MappingClass mc_concat(const MappingClass& a, const MappingClass& b);
MappingClass mc_inverse(const MappingClass& a);

// action on arc coordinates (coordinate families)
ArcCoord apply_mapping_class(const MarkedSurface& s, const MappingClass& mc, const ArcCoord& arc);
// action on punctures
int apply_to_puncture(const MarkedSurface& s, const MappingClass& mc, int z);
bool mapping_classes_equal(const Triangulation& base, const MappingClass& a,
                           const MappingClass& b);

MarkedMappingClass mmc_make(const MappingClass& base, const std::set<int>& punctures);
MarkedMappingClass mmc_identity(const Triangulation& base);
// Product (f1,P1)(f2,P2) = (f1 f2, P1 symmetric-difference f1(P2)).
MarkedMappingClass mmcg_product(const Triangulation& base, const MarkedMappingClass& a,
                                const MarkedMappingClass& b);
MarkedMappingClass mmcg_inverse(const Triangulation& base, const MarkedMappingClass& a);
bool mmcg_equal(const Triangulation& base, const MarkedMappingClass& a,
                const MarkedMappingClass& b);

// ---------------------------------------------------------------------------
// induced cluster automorphisms

// phi(f) on the cluster algebra of b_matrix(base): x_{tau_i} -> x_{f(tau_i)};
// always certifies direct.
ClusterAutomorphism phi(const LabeledExploration& le, const MappingClass& mc);
// psi_z: toggle all tags at puncture z.
ClusterAutomorphism psi_z(const LabeledExploration& le, int z);
// chi(f,P) = (prod_{z in P} psi_z) o phi(f).
ClusterAutomorphism chi(const LabeledExploration& le, const MarkedMappingClass& mmc);

// ---------------------------------------------------------------------------
// presentation checking

// Image-list composition f o h without graph certification (equality of
// automorphisms is decided by initial-cluster images, so relation checking
// stays finite in infinite type).
std::vector<RationalFn> compose_images(const std::vector<RationalFn>& f,
                                       const std::vector<RationalFn>& h);

struct Relation {
    std::string label;
    Word lhs, rhs;
};

struct RelationReport {
    std::string label;
    bool holds = false;
};

// Evaluates both sides of each relation by image-list composition (positive
// powers only) and compares exactly.
std::vector<RelationReport> verify_presentation(
    const std::map<std::string, ClusterAutomorphism>& generators,
    const std::vector<Relation>& relations);

bool all_relations_hold(const std::vector<RelationReport>& reports);

// The relations of the presentation of Aut+ for the twice-punctured disc of
// rank n: rho_i^2 = 1, tau rho_i = rho_i tau, tau sigma = sigma tau,
// sigma^2 = tau^{n-3}, rho_1 sigma = sigma rho_n, sigma rho_1 = rho_n sigma.
std::vector<Relation> dtilde_presentation(int n);

// H_{p,q} relations r1 r2 = r2 r1, r1^p = r2^q.
std::vector<Relation> annulus_presentation(int p, int q);

// ---------------------------------------------------------------------------
// flip graph enumeration (finite coordinate families)

struct FlipGraphSummary {
    int triangulations = 0;
    bool complete = false;
};
FlipGraphSummary enumerate_flip_graph(const Triangulation& base, int node_cap = kDefaultNodeCap);

// ---------------------------------------------------------------------------
// twice-punctured disc: chi-images of the presentation generators
//
// rho_1, rho_n are the tag toggles at the two punctures (point transpositions
// of the pocket pairs). phi(r) and phi(s) are located by certified search:
// the boundary rotation is pinned by its action on the boundary chords and by
// commuting with both toggles, the half twist by exchanging the two pockets
// and conjugating the toggles into each other; every candidate must certify
// as a direct automorphism and the returned tuple satisfies the presentation.
struct DtildeGenerators {
    Triangulation base;
    ExchangeGraph graph;
    ClusterAutomorphism tau, sigma, rho1, rhon; // presentation generators
    ClusterAutomorphism phi_r, phi_s;           // underlying mapping classes
};

DtildeGenerators dtilde_chi_generators(int c, int node_cap = 60000, int max_depth = 14);

} // namespace caut
