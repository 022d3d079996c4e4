#include "caut/surface.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace caut {

// ---------------------------------------------------------------------------
// marked surfaces

int MarkedSurface::boundary_points() const {
    return std::accumulate(boundary.begin(), boundary.end(), 0);
}

MarkedSurface make_surface(int genus, const std::vector<int>& boundary, int punctures) {
    if (genus < 0 || punctures < 0) throw excluded_surface_error("negative surface datum");
    for (int c : boundary)
        if (c < 1)
            throw excluded_surface_error("every boundary component needs a marked point");
    MarkedSurface s;
    s.genus = genus;
    s.boundary = boundary;
    s.punctures = punctures;
    int b = static_cast<int>(boundary.size());
    int c = s.boundary_points();
    if (b == 0 && genus == 0 && punctures <= 3)
        throw excluded_surface_error("sphere with at most three punctures");
    if (genus == 0 && b == 1 && punctures == 0 && c <= 3)
        throw excluded_surface_error("disc with at most three marked points");
    if (genus == 0 && b == 1 && punctures == 1 && c == 1)
        throw excluded_surface_error("once-punctured disc with one marked point");
    s.rank = 6 * genus + 3 * b + 3 * punctures + c - 6;
    if (s.rank < 1) throw excluded_surface_error("surface has rank < 1");
    return s;
}

// ---------------------------------------------------------------------------
// arcs

bool ArcCoord::operator<(const ArcCoord& o) const {
    auto key = [](const ArcCoord& x) {
        return std::tuple<int, int, int, int, int>(static_cast<int>(x.kind), x.a, x.b, x.w,
                                                   static_cast<int>(x.tag));
    };
    return key(*this) < key(o);
}

std::string ArcCoord::to_string() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::poly_chord: out << "chord(" << a << "," << b << ")"; break;
        case Kind::ann_out: out << "out(" << a << "," << b << ")"; break;
        case Kind::ann_in: out << "in(" << a << "," << b << ")"; break;
        case Kind::ann_bridge: out << "bridge(" << a << "," << b << "," << w << ")"; break;
        case Kind::ann_loop_out: out << "loop_out(" << a << ")"; break;
        case Kind::ann_loop_in: out << "loop_in(" << a << ")"; break;
        case Kind::pd_chord: out << "chord(" << a << "," << b << ")"; break;
        case Kind::pd_radius:
            out << "radius(" << a << (tag == Tag::notched ? ",notched" : ",plain") << ")";
            break;
        case Kind::pd_loop: out << "loop(" << a << ")"; break;
        case Kind::abstract_arc:
            out << "arc" << a << (tag == Tag::notched ? "~" : "");
            break;
    }
    return out.str();
}

namespace {

int imod(int a, int m) { return ((a % m) + m) % m; }

// #integers t with lo < t*den < hi (den > 0)
long long ints_strictly_between(long long lo, long long hi, long long den) {
    if (lo >= hi) return 0;
    auto floor_div = [](long long a, long long b) {
        long long q = a / b;
        if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
        return q;
    };
    long long tmin = floor_div(lo, den) + 1;
    long long tmax = (hi % den == 0) ? hi / den - 1 : floor_div(hi, den);
    return tmax >= tmin ? tmax - tmin + 1 : 0;
}

// Chords and loops on a circle with m marked points lift to intervals
// [lo, lo+span] (span = m for loops). Minimal crossings count the properly
// overlapping translate pairs, all inequalities strict.
int interval_crossings(int a_lo, int a_span, int b_lo, int b_span, int m) {
    int count = 0;
    for (int t = -2; t <= 2; ++t) {
        long long c = b_lo + static_cast<long long>(t) * m;
        long long d = c + b_span;
        long long x = a_lo, y = a_lo + a_span;
        if ((x < c && c < y && y < d) || (c < x && x < d && d < y)) ++count;
    }
    return count;
}

// endpoint k strictly inside the lifted interval of a chord/loop
int endpoint_inside(int lo, int span, int k, int m) {
    int count = 0;
    for (int t = -2; t <= 2; ++t) {
        long long kk = k + static_cast<long long>(t) * m;
        if (lo < kk && kk < lo + span) ++count;
    }
    return count;
}

int chord_span(const ArcCoord& x, int m) {
    return x.kind == ArcCoord::Kind::pd_loop || x.kind == ArcCoord::Kind::ann_loop_out ||
                   x.kind == ArcCoord::Kind::ann_loop_in
               ? m
               : imod(x.b - x.a, m);
}

} // namespace

int crossing_number(const MarkedSurface& s, const ArcCoord& x, const ArcCoord& y) {
    using K = ArcCoord::Kind;
    if (x == y) return 0;
    // symmetric; normalize order by kind
    if (static_cast<int>(y.kind) < static_cast<int>(x.kind)) return crossing_number(s, y, x);
    K kx = x.kind, ky = y.kind;

    // polygon
    if (kx == K::poly_chord && ky == K::poly_chord) {
        int m = s.boundary[0];
        return interval_crossings(x.a, imod(x.b - x.a, m), y.a, imod(y.b - y.a, m), m);
    }

    // annulus
    auto is_outer = [](K k) { return k == K::ann_out || k == K::ann_loop_out; };
    auto is_inner = [](K k) { return k == K::ann_in || k == K::ann_loop_in; };
    if (kx == K::ann_out || kx == K::ann_in || kx == K::ann_bridge || kx == K::ann_loop_out ||
        kx == K::ann_loop_in) {
        int p = s.boundary[0], q = s.boundary[1];
        auto boundary_size = [&](K k) { return is_outer(k) ? p : q; };
        // same-boundary chord/loop pairs
        if ((is_outer(kx) && is_outer(ky)) || (is_inner(kx) && is_inner(ky))) {
            int m = boundary_size(kx);
            return interval_crossings(x.a, chord_span(x, m), y.a, chord_span(y, m), m);
        }
        // opposite-boundary chords/loops never cross
        if ((is_outer(kx) && is_inner(ky)) || (is_inner(kx) && is_outer(ky))) return 0;
        // bridge against chord/loop
        if (kx == K::ann_bridge || ky == K::ann_bridge) {
            const ArcCoord& br = (kx == K::ann_bridge) ? x : y;
            const ArcCoord& other = (kx == K::ann_bridge) ? y : x;
            if (other.kind == K::ann_bridge) {
                // strict sign changes over the translates
                long long den = static_cast<long long>(p) * q;
                long long u = static_cast<long long>(br.a - other.a) * q;
                long long v = (static_cast<long long>(br.b - other.b) * p) +
                              static_cast<long long>(br.w - other.w) * den;
                return static_cast<int>(
                    ints_strictly_between(std::min(u, v), std::max(u, v), den));
            }
            if (is_outer(other.kind))
                return endpoint_inside(other.a, chord_span(other, p), br.a, p);
            return endpoint_inside(other.a, chord_span(other, q), br.b, q);
        }
    }

    // punctured disc
    if (kx == K::pd_chord || kx == K::pd_radius || kx == K::pd_loop) {
        int m = s.boundary[0];
        auto chordlike = [&](const ArcCoord& z) {
            return z.kind == K::pd_chord || z.kind == K::pd_loop;
        };
        if (chordlike(x) && chordlike(y))
            return interval_crossings(x.a, chord_span(x, m), y.a, chord_span(y, m), m);
        if (x.kind == K::pd_radius && y.kind == K::pd_radius) return 0;
        const ArcCoord& rad = (x.kind == K::pd_radius) ? x : y;
        const ArcCoord& other = (x.kind == K::pd_radius) ? y : x;
        return endpoint_inside(other.a, chord_span(other, m), rad.a, m);
    }
    throw unsupported_family_error("crossing number for abstract arcs");
}

bool compatible(const MarkedSurface& s, const ArcCoord& x, const ArcCoord& y) {
    using K = ArcCoord::Kind;
    // same underlying arc, different tags: the punctured-disc radius pair
    if (x.kind == K::pd_radius && y.kind == K::pd_radius) {
        if (x.a == y.a) return true;       // shared boundary end is plain on both
        return x.tag == y.tag;             // shared puncture end needs equal tags
    }
    return crossing_number(s, x, y) == 0;
}

ArcCoord iota(const ArcCoord& arc) {
    if (arc.kind == ArcCoord::Kind::pd_loop)
        return ArcCoord{ArcCoord::Kind::pd_radius, arc.a, 0, 0, Tag::notched};
    return arc;
}

// ---------------------------------------------------------------------------
// rotation systems and face extraction

namespace {

struct DartRef {
    bool boundary = false;
    int idx = 0;
    int end = 0;
    bool operator==(const DartRef& o) const {
        return boundary == o.boundary && idx == o.idx && end == o.end;
    }
};

struct ExtractResult {
    std::vector<Face> faces;
    std::vector<std::pair<int, int>> self_folded;
};

// Faces of the combinatorial map given by per-vertex rotations (darts in
// counterclockwise order). Orbits of sigma composed with reversal walk the
// face boundaries with a consistent orientation; the all-boundary orbits are
// the outside of each boundary component. Orbits are reversed so that stored
// faces list sides in clockwise order, matching the B-matrix convention.
ExtractResult extract_faces(const std::vector<std::vector<DartRef>>& rotation, int narcs,
                            int nsegs) {
    auto dart_id = [&](const DartRef& d) {
        return (d.boundary ? 2 * narcs : 0) + 2 * d.idx + d.end;
    };
    int total = 2 * narcs + 2 * nsegs;
    // sigma: next dart counterclockwise at the same vertex
    std::vector<int> sigma(total, -1);
    std::vector<int> seen_count(total, 0);
    for (const auto& rot : rotation)
        for (size_t i = 0; i < rot.size(); ++i) {
            int id = dart_id(rot[i]);
            ++seen_count[id];
            sigma[id] = dart_id(rot[(i + 1) % rot.size()]);
        }
    for (int id = 0; id < total; ++id)
        if (seen_count[id] != 1) throw input_error("rotation system dart count mismatch");
    auto alpha = [&](int id) { return id ^ 1; };

    std::vector<bool> seen(total, false);
    ExtractResult res;
    for (int start = 0; start < total; ++start) {
        if (seen[start]) continue;
        std::vector<int> orbit;
        int cur = start;
        do {
            seen[cur] = true;
            orbit.push_back(cur);
            cur = sigma[alpha(cur)];
        } while (cur != start);
        bool all_boundary = std::all_of(orbit.begin(), orbit.end(),
                                        [&](int id) { return id >= 2 * narcs; });
        if (all_boundary) continue;
        if (orbit.size() != 3) throw input_error("rotation system face is not a triangle");
        // with counterclockwise rotations these orbits walk each face
        // boundary clockwise, matching the stored side order
        std::array<Side, 3> sides;
        std::array<int, 3> arcpos{-1, -1, -1};
        for (int i = 0; i < 3; ++i) {
            int id = orbit[i];
            if (id >= 2 * narcs)
                sides[i] = Side{true, (id - 2 * narcs) / 2};
            else {
                sides[i] = Side{false, id / 2};
                arcpos[i] = id / 2;
            }
        }
        // repeated arc: self-folded triangle
        int rep = -1;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (arcpos[i] >= 0 && arcpos[i] == arcpos[j]) rep = arcpos[i];
        if (rep >= 0) {
            int loop = -1;
            for (int i = 0; i < 3; ++i)
                if (arcpos[i] != rep) loop = arcpos[i];
            if (loop < 0) throw input_error("degenerate self-folded face");
            res.self_folded.push_back({loop, rep});
        } else {
            res.faces.push_back(Face{sides});
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// ideal views of tagged coordinate triangulations

// Replace notched radii by loops (after un-notching punctures where every
// end is notched). Positions are preserved.
std::vector<ArcCoord> ideal_view(const MarkedSurface& s, Family family,
                                 const std::vector<ArcCoord>& arcs) {
    using K = ArcCoord::Kind;
    std::vector<ArcCoord> out = arcs;
    if (family != Family::punctured_disc) return out;
    bool all_notched = true, any = false;
    for (const auto& a : out)
        if (a.kind == K::pd_radius) {
            any = true;
            if (a.tag == Tag::plain) all_notched = false;
        }
    if (any && all_notched)
        for (auto& a : out)
            if (a.kind == K::pd_radius) a.tag = Tag::plain;
    // pair (plain, notched) at the same vertex -> (radius, loop)
    for (size_t i = 0; i < out.size(); ++i) {
        if (out[i].kind != K::pd_radius || out[i].tag != Tag::notched) continue;
        bool paired = false;
        for (size_t j = 0; j < out.size(); ++j)
            if (j != i && out[j].kind == K::pd_radius && out[j].a == out[i].a &&
                out[j].tag == Tag::plain)
                paired = true;
        if (!paired) throw input_error("lone notched radius in tagged triangulation");
        out[i] = ArcCoord{K::pd_loop, out[i].a, 0, 0, Tag::plain};
    }
    return out;
}

// rotation system builders ---------------------------------------------------

// keyed dart collector: at each vertex the interior darts are sorted by the
// family-specific angular key
struct KeyedDart {
    long long key1 = 0, key2 = 0;
    DartRef dart;
};

std::vector<DartRef> sorted_darts(std::vector<KeyedDart>& v) {
    std::stable_sort(v.begin(), v.end(), [](const KeyedDart& a, const KeyedDart& b) {
        return std::tie(a.key1, a.key2) < std::tie(b.key1, b.key2);
    });
    std::vector<DartRef> out;
    out.reserve(v.size());
    for (auto& kd : v) out.push_back(kd.dart);
    return out;
}

// disc-like boundary vertex order: [seg(v,v+1), ccw-hugging chords by span
// ascending, loop end, radius-like darts, loop end, cw-hugging chords by span
// descending, seg(v-1,v)]
// groups: 0 = ccw-hugging, 1 = towards interior, 2 = cw-hugging

std::vector<std::vector<DartRef>> disc_rotation(const MarkedSurface& s,
                                                const std::vector<ArcCoord>& arcs) {
    using K = ArcCoord::Kind;
    int m = s.boundary[0];
    int narcs = static_cast<int>(arcs.size());
    // vertices: 0..m-1 boundary, m = puncture (if present)
    int nverts = m + s.punctures;
    std::vector<std::vector<KeyedDart>> interior(nverts);
    for (int pos = 0; pos < narcs; ++pos) {
        const ArcCoord& a = arcs[pos];
        if (a.kind == K::poly_chord || a.kind == K::pd_chord) {
            int span = imod(a.b - a.a, m);
            // ccw-hugging end at a.a (group 0, span ascending)
            interior[a.a].push_back({0, span, DartRef{false, pos, 0}});
            // cw-hugging end at a.b (group 2, span descending)
            interior[a.b].push_back({2, -span, DartRef{false, pos, 1}});
        } else if (a.kind == K::pd_loop) {
            interior[a.a].push_back({0, m, DartRef{false, pos, 0}});
            interior[a.a].push_back({2, -m, DartRef{false, pos, 1}});
        } else if (a.kind == K::pd_radius) {
            interior[a.a].push_back({1, 0, DartRef{false, pos, 0}});
            // puncture end: ordered around the puncture by boundary vertex
            interior[m].push_back({a.a, 0, DartRef{false, pos, 1}});
        } else {
            throw unsupported_family_error("arc kind in disc rotation");
        }
    }
    std::vector<std::vector<DartRef>> rot(nverts);
    for (int v = 0; v < m; ++v) {
        rot[v].push_back(DartRef{true, v, 0}); // seg v = (v, v+1), end at v
        auto sorted = sorted_darts(interior[v]);
        rot[v].insert(rot[v].end(), sorted.begin(), sorted.end());
        rot[v].push_back(DartRef{true, imod(v - 1, m), 1}); // seg v-1 = (v-1, v), end at v
    }
    if (s.punctures == 1) rot[m] = sorted_darts(interior[m]);
    return rot;
}

// annulus: outer boundary = cover bottom line, inner = top line; outer index
// increases counterclockwise, scale outer positions by q and inner by p so
// all keys are integers over the common denominator p*q
std::vector<std::vector<DartRef>> annulus_rotation(const MarkedSurface& s,
                                                   const std::vector<ArcCoord>& arcs) {
    using K = ArcCoord::Kind;
    int p = s.boundary[0], q = s.boundary[1];
    int narcs = static_cast<int>(arcs.size());
    std::vector<std::vector<KeyedDart>> outer(p), inner(q);
    for (int pos = 0; pos < narcs; ++pos) {
        const ArcCoord& a = arcs[pos];
        switch (a.kind) {
            case K::ann_out: {
                int span = imod(a.b - a.a, p);
                outer[a.a].push_back({0, span, DartRef{false, pos, 0}});
                outer[a.b].push_back({4, -span, DartRef{false, pos, 1}});
                break;
            }
            case K::ann_loop_out:
                outer[a.a].push_back({1, 0, DartRef{false, pos, 0}});
                outer[a.a].push_back({3, 0, DartRef{false, pos, 1}});
                break;
            case K::ann_in: {
                int span = imod(a.b - a.a, q);
                // top vertex: [segW, west asc, loopW, bridges, loopE, east desc, segE]
                inner[a.a].push_back({4, -span, DartRef{false, pos, 0}}); // east-hug, desc
                inner[a.b].push_back({0, span, DartRef{false, pos, 1}});  // west-hug, asc
                break;
            }
            case K::ann_loop_in:
                inner[a.a].push_back({3, 0, DartRef{false, pos, 0}}); // east end
                inner[a.a].push_back({1, 0, DartRef{false, pos, 1}}); // west end
                break;
            case K::ann_bridge: {
                // outer end: bridges ordered by inner cover position descending
                long long innerx = static_cast<long long>(a.b) * p +
                                   static_cast<long long>(a.w) * p * q;
                outer[a.a].push_back({2, -innerx, DartRef{false, pos, 0}});
                // inner end: ordered by outer cover position ascending,
                // re-anchored at the inner vertex
                long long outerx = static_cast<long long>(a.a) * q -
                                   static_cast<long long>(a.w) * p * q;
                inner[a.b].push_back({2, outerx, DartRef{false, pos, 1}});
                break;
            }
            default:
                throw unsupported_family_error("arc kind in annulus rotation");
        }
    }
    // boundary segment ids: outer 0..p-1 (seg i = (i,i+1)), inner p..p+q-1
    std::vector<std::vector<DartRef>> rot(p + q);
    for (int v = 0; v < p; ++v) {
        rot[v].push_back(DartRef{true, v, 0});
        auto sorted = sorted_darts(outer[v]);
        rot[v].insert(rot[v].end(), sorted.begin(), sorted.end());
        rot[v].push_back(DartRef{true, imod(v - 1, p), 1});
    }
    for (int v = 0; v < q; ++v) {
        // top vertex cyclic order: [segW, interior ascending, segE]
        rot[p + v].push_back(DartRef{true, p + imod(v - 1, q), 1});
        auto sorted = sorted_darts(inner[v]);
        rot[p + v].insert(rot[p + v].end(), sorted.begin(), sorted.end());
        rot[p + v].push_back(DartRef{true, p + v, 0});
    }
    return rot;
}

void rebuild_faces(Triangulation& t) {
    std::vector<ArcCoord> ideal = ideal_view(t.surface, t.family, t.arcs);
    std::vector<std::vector<DartRef>> rot;
    if (t.family == Family::polygon || t.family == Family::punctured_disc)
        rot = disc_rotation(t.surface, ideal);
    else if (t.family == Family::annulus)
        rot = annulus_rotation(t.surface, ideal);
    else
        throw unsupported_family_error("face rebuild for this family");
    ExtractResult res = extract_faces(rot, t.n(), t.boundary_segment_count);
    t.faces = std::move(res.faces);
    t.self_folded = std::move(res.self_folded);
    // positional bookkeeping: each arc must occupy exactly two triangle slots
    std::vector<int> slots(t.n(), 0);
    for (const auto& f : t.faces)
        for (const auto& sd : f.s)
            if (!sd.boundary) ++slots[sd.idx];
    for (const auto& [loop, radius] : t.self_folded) {
        slots[loop] += 1;
        slots[radius] += 2;
    }
    for (int c : slots)
        if (c != 2) throw input_error("arc does not lie in exactly two triangle slots");
}

} // namespace

// ---------------------------------------------------------------------------
// triangulation basics

std::string Triangulation::key() const {
    std::ostringstream out;
    std::vector<std::string> parts;
    for (const auto& a : arcs) parts.push_back(a.to_string());
    if (family == Family::abstract_complex || family == Family::twice_punctured_disc) {
        // arcs are positional; canonicalize the face complex
        std::vector<std::string> fstr;
        for (const auto& f : faces) {
            std::array<std::string, 3> sides;
            for (int i = 0; i < 3; ++i)
                sides[i] = (f.s[i].boundary ? "b" : "a") + std::to_string(f.s[i].idx);
            int best = 0;
            for (int r = 1; r < 3; ++r) {
                std::array<std::string, 3> rot{sides[r], sides[(r + 1) % 3], sides[(r + 2) % 3]};
                std::array<std::string, 3> cur{sides[best], sides[(best + 1) % 3],
                                               sides[(best + 2) % 3]};
                if (rot < cur) best = r;
            }
            fstr.push_back(sides[best] + "," + sides[(best + 1) % 3] + "," +
                           sides[(best + 2) % 3]);
        }
        std::sort(fstr.begin(), fstr.end());
        std::vector<std::pair<int, int>> sf = self_folded;
        std::sort(sf.begin(), sf.end());
        out << "arcs:";
        for (const auto& p : parts) out << p << ";";
        out << "|faces:";
        for (const auto& f : fstr) out << f << ";";
        out << "|sf:";
        for (const auto& [l, r] : sf) out << l << "-" << r << ";";
        return out.str();
    }
    std::sort(parts.begin(), parts.end());
    for (size_t i = 0; i < parts.size(); ++i) out << (i ? "|" : "") << parts[i];
    return out.str();
}

Quiver b_matrix(const Triangulation& t) {
    int n = t.n();
    std::vector<int> radius_of(n, -1); // loop position -> radius position
    for (const auto& [loop, radius] : t.self_folded) radius_of[loop] = radius;
    std::vector<std::vector<int>> b(n, std::vector<int>(n, 0));
    for (const auto& f : t.faces) {
        for (int i = 0; i < 3; ++i) {
            const Side& si = f.s[i];
            const Side& sj = f.s[(i + 1) % 3];
            if (si.boundary || sj.boundary) continue;
            std::vector<int> from = {si.idx};
            std::vector<int> to = {sj.idx};
            if (radius_of[si.idx] >= 0) from.push_back(radius_of[si.idx]);
            if (radius_of[sj.idx] >= 0) to.push_back(radius_of[sj.idx]);
            for (int x : from)
                for (int y : to) {
                    b[x][y] += 1;
                    b[y][x] -= 1;
                }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(b[i][j]) > 2) throw input_error("B-matrix entry out of range");
    return Quiver(n, b);
}

// ---------------------------------------------------------------------------
// constructors

Triangulation polygon_fan(int m) {
    if (m < 4) throw input_error("polygon_fan needs at least 4 vertices");
    Triangulation t;
    t.surface = make_surface(0, {m}, 0);
    t.family = Family::polygon;
    t.boundary_segment_count = m;
    for (int j = 2; j <= m - 2; ++j)
        t.arcs.push_back(ArcCoord{ArcCoord::Kind::poly_chord, 0, j, 0, Tag::plain});
    rebuild_faces(t);
    return t;
}

Triangulation annulus_std(int p, int q) {
    if (p < 1 || q < 1) throw input_error("annulus_std needs p, q >= 1");
    Triangulation t;
    t.surface = make_surface(0, {p, q}, 0);
    t.family = Family::annulus;
    t.boundary_segment_count = p + q;
    using K = ArcCoord::Kind;
    for (int j = 0; j < q; ++j) t.arcs.push_back(ArcCoord{K::ann_bridge, 0, j, 0, Tag::plain});
    t.arcs.push_back(ArcCoord{K::ann_bridge, 0, 0, 1, Tag::plain});
    for (int i = 1; i < p; ++i) t.arcs.push_back(ArcCoord{K::ann_bridge, i, 0, 1, Tag::plain});
    rebuild_faces(t);
    return t;
}

Triangulation punctured_disc_std(int c, int p) {
    using K = ArcCoord::Kind;
    if (p == 1) {
        if (c < 2) throw excluded_surface_error("once-punctured disc needs >= 2 marked points");
        Triangulation t;
        t.surface = make_surface(0, {c}, 1);
        t.family = Family::punctured_disc;
        t.boundary_segment_count = c;
        t.arcs.push_back(ArcCoord{K::pd_radius, 0, 0, 0, Tag::plain});
        t.arcs.push_back(ArcCoord{K::pd_radius, 0, 0, 0, Tag::notched});
        for (int j = 2; j <= c - 1; ++j)
            t.arcs.push_back(ArcCoord{K::pd_chord, 0, j, 0, Tag::plain});
        rebuild_faces(t);
        return t;
    }
    if (p != 2) throw input_error("punctured_disc_std supports p = 1 or 2");
    if (c < 2) throw input_error("twice-punctured pocket base needs >= 2 marked points");
    // pocket base: two self-folded pockets around the punctures inside a
    // loop at vertex 0, chords fanning out of vertex 0
    Triangulation t;
    t.surface = make_surface(0, {c}, 2);
    t.family = Family::twice_punctured_disc;
    t.boundary_segment_count = c;
    int n = c + 3;
    // positions: 0 radius-u plain, 1 radius-u notched, 2 radius-w plain,
    // 3 radius-w notched, 4 enclosing loop, 5.. chords (0,j)
    for (int i = 0; i < 4; ++i)
        t.arcs.push_back(
            ArcCoord{K::abstract_arc, i / 2, 0, 0, (i % 2) ? Tag::notched : Tag::plain});
    t.arcs.push_back(ArcCoord{K::abstract_arc, 2, 0, 0, Tag::plain});
    for (int j = 2; j <= c - 1; ++j)
        t.arcs.push_back(ArcCoord{K::abstract_arc, 10 + j, 0, 0, Tag::plain});
    // hand-specified rotation system; vertices: 0..c-1 boundary, c = u, c+1 = w
    std::vector<std::vector<DartRef>> rot(c + 2);
    auto arc_dart = [](int pos, int end) { return DartRef{false, pos, end}; };
    // vertex 0: seg(0,1), chords ascending, F_e, LA_e, A, LA_w, LB_e, B, LB_w,
    // F_w, seg(c-1,0)
    rot[0].push_back(DartRef{true, 0, 0});
    for (int jpos = 5; jpos < n; ++jpos) rot[0].push_back(arc_dart(jpos, 0));
    rot[0].push_back(arc_dart(4, 0)); // F east end
    rot[0].push_back(arc_dart(1, 0)); // L_A east end
    rot[0].push_back(arc_dart(0, 0)); // radius A boundary end
    rot[0].push_back(arc_dart(1, 1)); // L_A west end
    rot[0].push_back(arc_dart(3, 0)); // L_B east end
    rot[0].push_back(arc_dart(2, 0)); // radius B boundary end
    rot[0].push_back(arc_dart(3, 1)); // L_B west end
    rot[0].push_back(arc_dart(4, 1)); // F west end
    rot[0].push_back(DartRef{true, c - 1, 1});
    for (int v = 1; v < c; ++v) {
        rot[v].push_back(DartRef{true, v, 0});
        if (v >= 2) rot[v].push_back(arc_dart(5 + (v - 2), 1)); // chord (0,v) arrives
        rot[v].push_back(DartRef{true, v - 1, 1});
    }
    rot[c] = {arc_dart(0, 1)};     // puncture u
    rot[c + 1] = {arc_dart(2, 1)}; // puncture w
    ExtractResult res = extract_faces(rot, n, c);
    t.faces = std::move(res.faces);
    t.self_folded = std::move(res.self_folded);
    return t;
}

Triangulation abstract_triangulation(const MarkedSurface& s, int narcs,
                                     const std::vector<Face>& faces,
                                     const std::vector<std::pair<int, int>>& self_folded,
                                     int boundary_segments) {
    Triangulation t;
    t.surface = s;
    t.family = Family::abstract_complex;
    t.boundary_segment_count = boundary_segments;
    for (int i = 0; i < narcs; ++i)
        t.arcs.push_back(ArcCoord{ArcCoord::Kind::abstract_arc, i, 0, 0, Tag::plain});
    t.faces = faces;
    t.self_folded = self_folded;
    if (narcs != s.rank) throw input_error("arc count does not match surface rank");
    std::vector<int> slots(narcs, 0);
    for (const auto& f : t.faces)
        for (const auto& sd : f.s)
            if (!sd.boundary) ++slots[sd.idx];
    for (const auto& [loop, radius] : t.self_folded) {
        slots[loop] += 1;
        slots[radius] += 2;
    }
    for (int c : slots)
        if (c != 2) throw input_error("arc does not lie in exactly two triangle slots");
    return t;
}

Triangulation figure2_right() {
    MarkedSurface s = make_surface(0, {2, 1}, 1);
    auto A = [](int i) { return Side{false, i}; };
    auto B = [](int i) { return Side{true, i}; };
    std::vector<Face> faces = {
        Face{{A(5), A(1), B(0)}}, // loop 6, arc 2, boundary
        Face{{A(4), A(1), A(2)}}, // arcs 5, 2, 3
        Face{{A(2), A(3), B(1)}}, // arcs 3, 4, boundary
        Face{{A(4), A(3), B(2)}}, // arcs 5, 4, boundary
    };
    return abstract_triangulation(s, 6, faces, {{5, 0}}, 3);
}

Triangulation figure2_left() {
    MarkedSurface s = make_surface(0, {2, 1}, 1);
    auto A = [](int i) { return Side{false, i}; };
    auto B = [](int i) { return Side{true, i}; };
    std::vector<Face> faces = {
        Face{{A(0), A(1), A(5)}}, // arcs 1, 2, 6
        Face{{A(0), A(5), B(0)}}, // arcs 1, 6, boundary
        Face{{A(4), A(1), A(2)}},
        Face{{A(2), A(3), B(1)}},
        Face{{A(4), A(3), B(2)}},
    };
    return abstract_triangulation(s, 6, faces, {}, 3);
}

Triangulation markov_torus() {
    MarkedSurface s = make_surface(1, {}, 1);
    auto A = [](int i) { return Side{false, i}; };
    std::vector<Face> faces = {
        Face{{A(0), A(2), A(1)}},
        Face{{A(0), A(2), A(1)}},
    };
    return abstract_triangulation(s, 3, faces, {}, 0);
}

// ---------------------------------------------------------------------------
// flips

namespace {

std::vector<ArcCoord> flip_candidates(const Triangulation& t) {
    using K = ArcCoord::Kind;
    std::vector<ArcCoord> out;
    if (t.family == Family::polygon) {
        int m = t.surface.boundary[0];
        for (int a = 0; a < m; ++a)
            for (int b = a + 2; b < m; ++b)
                if (imod(a - b, m) >= 2) out.push_back(ArcCoord{K::poly_chord, a, b, 0, Tag::plain});
        return out;
    }
    if (t.family == Family::punctured_disc) {
        int m = t.surface.boundary[0];
        for (int a = 0; a < m; ++a)
            for (int span = 2; span <= m - 1; ++span)
                out.push_back(ArcCoord{K::pd_chord, a, imod(a + span, m), 0, Tag::plain});
        for (int a = 0; a < m; ++a) {
            out.push_back(ArcCoord{K::pd_radius, a, 0, 0, Tag::plain});
            out.push_back(ArcCoord{K::pd_radius, a, 0, 0, Tag::notched});
        }
        return out;
    }
    if (t.family == Family::annulus) {
        int p = t.surface.boundary[0], q = t.surface.boundary[1];
        int wmin = 0, wmax = 0;
        for (const auto& a : t.arcs)
            if (a.kind == K::ann_bridge) {
                wmin = std::min(wmin, a.w);
                wmax = std::max(wmax, a.w);
            }
        for (int a = 0; a < p; ++a)
            for (int span = 2; span <= p - 1; ++span)
                out.push_back(ArcCoord{K::ann_out, a, imod(a + span, p), 0, Tag::plain});
        for (int a = 0; a < q; ++a)
            for (int span = 2; span <= q - 1; ++span)
                out.push_back(ArcCoord{K::ann_in, a, imod(a + span, q), 0, Tag::plain});
        if (p >= 2)
            for (int a = 0; a < p; ++a) out.push_back(ArcCoord{K::ann_loop_out, a, 0, 0, Tag::plain});
        if (q >= 2)
            for (int a = 0; a < q; ++a) out.push_back(ArcCoord{K::ann_loop_in, a, 0, 0, Tag::plain});
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < q; ++b)
                for (int w = wmin - 2; w <= wmax + 2; ++w)
                    out.push_back(ArcCoord{K::ann_bridge, a, b, w, Tag::plain});
        return out;
    }
    throw unsupported_family_error("flip candidates for this family");
}

Triangulation flip_coordinate(const Triangulation& t, int pos) {
    std::vector<ArcCoord> rest;
    for (int i = 0; i < t.n(); ++i)
        if (i != pos) rest.push_back(t.arcs[i]);
    std::vector<ArcCoord> found;
    for (const auto& cand : flip_candidates(t)) {
        if (cand == t.arcs[pos]) continue;
        if (std::find(t.arcs.begin(), t.arcs.end(), cand) != t.arcs.end()) continue;
        bool ok = true;
        for (const auto& r : rest)
            if (!compatible(t.surface, cand, r)) {
                ok = false;
                break;
            }
        if (ok) found.push_back(cand);
    }
    if (found.size() != 1)
        throw error("tagged flip replacement is not unique (found " +
                    std::to_string(found.size()) + ")");
    Triangulation r = t;
    r.arcs[pos] = found.front();
    rebuild_faces(r);
    return r;
}

Triangulation flip_abstract(const Triangulation& t, int pos) {
    Triangulation r = t;
    // radius of a self-folded triangle cannot be flipped in ideal mode
    for (const auto& [loop, radius] : t.self_folded) {
        if (radius == pos) throw not_flippable_error("radius of a self-folded triangle");
        if (loop == pos) {
            // self-folded pocket plus its neighbor triangle rewrite
            int nb = -1;
            for (int f = 0; f < static_cast<int>(t.faces.size()); ++f)
                for (int i = 0; i < 3; ++i)
                    if (!t.faces[f].s[i].boundary && t.faces[f].s[i].idx == pos) nb = f;
            if (nb < 0) throw input_error("self-folded loop without a neighbor face");
            Face face = t.faces[nb];
            while (face.s[0].boundary || face.s[0].idx != pos)
                face = Face{{face.s[1], face.s[2], face.s[0]}};
            Side e = face.s[1], f2 = face.s[2];
            Side rad{false, radius};
            Side newarc{false, pos};
            std::vector<Face> faces;
            for (int f = 0; f < static_cast<int>(t.faces.size()); ++f)
                if (f != nb) faces.push_back(t.faces[f]);
            faces.push_back(Face{{rad, e, newarc}});
            faces.push_back(Face{{rad, newarc, f2}});
            r.faces = std::move(faces);
            r.self_folded.clear();
            for (const auto& sf : t.self_folded)
                if (sf.first != pos) r.self_folded.push_back(sf);
            return r;
        }
    }
    // ordinary arc: two face slots
    std::vector<std::pair<int, int>> slots; // (face, side index)
    for (int f = 0; f < static_cast<int>(t.faces.size()); ++f)
        for (int i = 0; i < 3; ++i)
            if (!t.faces[f].s[i].boundary && t.faces[f].s[i].idx == pos) slots.push_back({f, i});
    if (slots.size() != 2 || slots[0].first == slots[1].first) {
        if (slots.size() == 2 && slots[0].first == slots[1].first)
            throw not_flippable_error("arc glued to itself within one triangle");
        throw input_error("arc does not bound two triangles");
    }
    auto rotate_to = [&](Face face, int side) {
        while (side--) face = Face{{face.s[1], face.s[2], face.s[0]}};
        return face;
    };
    Face d1 = rotate_to(t.faces[slots[0].first], slots[0].second);
    Face d2 = rotate_to(t.faces[slots[1].first], slots[1].second);
    Side a = d1.s[1], b = d1.s[2], c = d2.s[1], d = d2.s[2];
    Side k{false, pos};
    std::vector<Face> faces;
    for (int f = 0; f < static_cast<int>(t.faces.size()); ++f)
        if (f != slots[0].first && f != slots[1].first) faces.push_back(t.faces[f]);
    auto arc_side = [](const Side& s) { return !s.boundary; };
    if (arc_side(d) && arc_side(a) && d == a) {
        // flip closes up into a self-folded pocket around a
        faces.push_back(Face{{k, b, c}});
        r.self_folded.push_back({pos, a.idx});
    } else if (arc_side(b) && arc_side(c) && b == c) {
        faces.push_back(Face{{k, d, a}});
        r.self_folded.push_back({pos, b.idx});
    } else {
        faces.push_back(Face{{k, b, c}});
        faces.push_back(Face{{k, d, a}});
    }
    r.faces = std::move(faces);
    return r;
}

} // namespace

Triangulation flip(const Triangulation& t, int pos) {
    if (pos < 0 || pos >= t.n()) throw index_error("flip position out of range");
    if (t.family == Family::polygon || t.family == Family::punctured_disc ||
        t.family == Family::annulus)
        return flip_coordinate(t, pos);
    return flip_abstract(t, pos);
}

Triangulation tag_toggle(const Triangulation& t, int z) {
    if (t.surface.boundary.empty() && t.surface.punctures == 1)
        throw closed_once_punctured_error("tag toggle undefined on a closed once-punctured surface");
    if (z < 0 || z >= t.surface.punctures) throw index_error("puncture id out of range");
    if (t.family == Family::punctured_disc) {
        Triangulation r = t;
        for (auto& a : r.arcs)
            if (a.kind == ArcCoord::Kind::pd_radius)
                a.tag = a.tag == Tag::plain ? Tag::notched : Tag::plain;
        rebuild_faces(r);
        return r;
    }
    if (t.family == Family::twice_punctured_disc) {
        // the pocket pairs sit at positions (0,1) for puncture 0 and (2,3)
        // for puncture 1; toggling exchanges the pair and the loop moves with
        // the notched position
        int lo = 2 * z, hi = 2 * z + 1;
        Triangulation r = t;
        std::swap(r.arcs[lo], r.arcs[hi]);
        auto remap = [&](int idx) { return idx == lo ? hi : (idx == hi ? lo : idx); };
        for (auto& f : r.faces)
            for (auto& sd : f.s)
                if (!sd.boundary) sd.idx = remap(sd.idx);
        for (auto& [loop, radius] : r.self_folded) {
            loop = remap(loop);
            radius = remap(radius);
        }
        return r;
    }
    throw unsupported_family_error("tag toggle for this family");
}

// ---------------------------------------------------------------------------
// labeled exploration

const RationalFn& LabeledExploration::variable_of(const ArcCoord& arc) const {
    auto it = arc_var.find(arc.to_string());
    if (it == arc_var.end())
        throw unreachable_error("arc not reached by the labeled exploration: " + arc.to_string());
    return it->second;
}

LabeledExploration explore_labeled(const Triangulation& base, int node_cap, int depth_cap) {
    LabeledExploration le;
    le.base = base;
    Quiver q = b_matrix(base);
    le.graph = explore(q, node_cap, depth_cap);

    Seed init = initial_seed(q);
    for (int i = 0; i < base.n(); ++i)
        le.arc_var.emplace(base.arcs[i].to_string(), init.cluster[i]);
    le.tri_cluster.emplace(base.key(), canonical_cluster_key(init.cluster));

    struct Item {
        Triangulation tri;
        Seed seed;
        int depth;
    };
    std::deque<Item> queue;
    queue.push_back({base, init, 0});
    std::set<std::string> visited = {base.key()};
    bool capped = false;
    while (!queue.empty()) {
        auto [t, s, depth] = queue.front();
        queue.pop_front();
        if (depth >= depth_cap) {
            capped = true;
            continue;
        }
        for (int k = 0; k < base.n(); ++k) {
            Triangulation t2 = flip(t, k);
            Seed s2 = mutate_seed(s, k);
            // flips must track mutations exactly
            if (!(b_matrix(t2) == s2.quiver))
                throw error("flip/mutation commutation failure during labeled exploration");
            auto [it, fresh] = le.arc_var.emplace(t2.arcs[k].to_string(), s2.cluster[k]);
            if (!fresh && !(it->second == s2.cluster[k]))
                throw error("arc mapped to two different cluster variables");
            std::string tkey = t2.key();
            std::string ckey = canonical_cluster_key(s2.cluster);
            auto [it2, fresh2] = le.tri_cluster.emplace(tkey, ckey);
            if (!fresh2 && it2->second != ckey)
                throw error("triangulation mapped to two different clusters");
            if (!visited.count(tkey)) {
                if (static_cast<int>(visited.size()) >= node_cap) {
                    capped = true;
                    continue;
                }
                visited.insert(tkey);
                queue.push_back({t2, s2, depth + 1});
            }
        }
    }
    le.complete = !capped && le.graph.complete;
    return le;
}

// ---------------------------------------------------------------------------
// mapping classes

std::vector<std::string> mcg_generator_names(const Triangulation& base) {
    switch (base.family) {
        case Family::polygon: return {"rot"};
        case Family::punctured_disc: return {"rot"};
        case Family::annulus: {
            int p = base.surface.boundary[0], q = base.surface.boundary[1];
            if (p == q) return {"r1", "r2", "swap"};
            return {"r1", "r2"};
        }
        case Family::twice_punctured_disc: return {"r", "s"};
        default: throw unsupported_family_error("no named mapping classes for this family");
    }
}

MappingClass mcg_generator(const Triangulation& base, const std::string& name, int power) {
    auto names = mcg_generator_names(base);
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw input_error("unknown mapping class generator: " + name);
    MappingClass mc;
    mc.family = base.family;
    if (power != 0) mc.word.push_back(GenPower{name, power});
    return mc;
}

MappingClass mc_identity(const Triangulation& base) {
    MappingClass mc;
    mc.family = base.family;
    return mc;
}

MappingClass mc_concat(const MappingClass& a, const MappingClass& b) {
    if (a.family != b.family) throw input_error("mapping classes on different surfaces");
    MappingClass mc = a;
    mc.word.insert(mc.word.end(), b.word.begin(), b.word.end());
    return mc;
}

MappingClass mc_inverse(const MappingClass& a) {
    MappingClass mc;
    mc.family = a.family;
    for (auto it = a.word.rbegin(); it != a.word.rend(); ++it)
        mc.word.push_back(GenPower{it->name, -it->power});
    return mc;
}

namespace {

ArcCoord apply_generator(const MarkedSurface& s, Family family, const std::string& name, int k,
                         const ArcCoord& arc) {
    using K = ArcCoord::Kind;
    ArcCoord a = arc;
    if (family == Family::polygon && name == "rot") {
        int m = s.boundary[0];
        int na = imod(a.a + k, m), nb = imod(a.b + k, m);
        if (na > nb) std::swap(na, nb);
        // normalize: the unordered pair determines the chord
        a.a = na;
        a.b = nb;
        return a;
    }
    if (family == Family::punctured_disc && name == "rot") {
        int m = s.boundary[0];
        if (a.kind == K::pd_chord) {
            a.a = imod(a.a + k, m);
            a.b = imod(a.b + k, m);
        } else {
            a.a = imod(a.a + k, m);
        }
        return a;
    }
    if (family == Family::annulus) {
        int p = s.boundary[0], q = s.boundary[1];
        auto floor_div = [](int x, int y) {
            int r = x / y;
            if ((x % y) != 0 && ((x < 0) != (y < 0))) --r;
            return r;
        };
        if (name == "r1") {
            if (a.kind == K::ann_out) {
                a.a = imod(a.a + k, p);
                a.b = imod(a.b + k, p);
            } else if (a.kind == K::ann_loop_out) {
                a.a = imod(a.a + k, p);
            } else if (a.kind == K::ann_bridge) {
                int raw = a.a + k;
                a.a = imod(raw, p);
                a.w -= floor_div(raw, p);
            }
            return a;
        }
        if (name == "r2") {
            if (a.kind == K::ann_in) {
                a.a = imod(a.a - k, q);
                a.b = imod(a.b - k, q);
            } else if (a.kind == K::ann_loop_in) {
                a.a = imod(a.a - k, q);
            } else if (a.kind == K::ann_bridge) {
                int raw = a.b - k;
                a.b = imod(raw, q);
                a.w += floor_div(raw, q);
            }
            return a;
        }
        if (name == "swap") {
            if (p != q) throw input_error("boundary swap needs p = q");
            if (imod(k, 2) == 0) return a;
            switch (a.kind) {
                case K::ann_out: return ArcCoord{K::ann_in, imod(-a.b, q), imod(-a.a, q), 0, a.tag};
                case K::ann_in: return ArcCoord{K::ann_out, imod(-a.b, p), imod(-a.a, p), 0, a.tag};
                case K::ann_loop_out: return ArcCoord{K::ann_loop_in, imod(-a.a, q), 0, 0, a.tag};
                case K::ann_loop_in: return ArcCoord{K::ann_loop_out, imod(-a.a, p), 0, 0, a.tag};
                case K::ann_bridge: {
                    int na = imod(-a.b, p), nb = imod(-a.a, q);
                    int nw = a.w + (a.b != 0 ? 1 : 0) - (a.a != 0 ? 1 : 0);
                    return ArcCoord{K::ann_bridge, na, nb, nw, a.tag};
                }
                default: break;
            }
        }
    }
    throw unsupported_family_error("mapping class action on this arc");
}

} // namespace

ArcCoord apply_mapping_class(const MarkedSurface& s, const MappingClass& mc, const ArcCoord& arc) {
    ArcCoord a = arc;
    // word acts as a left product: the rightmost factor applies first
    for (auto it = mc.word.rbegin(); it != mc.word.rend(); ++it)
        a = apply_generator(s, mc.family, it->name, it->power, a);
    return a;
}

int apply_to_puncture(const MarkedSurface& s, const MappingClass& mc, int z) {
    if (z < 0 || z >= s.punctures) throw index_error("puncture id out of range");
    if (mc.family == Family::twice_punctured_disc) {
        int spow = 0;
        for (const auto& gp : mc.word)
            if (gp.name == "s") spow += gp.power;
        return imod(spow, 2) ? 1 - z : z;
    }
    return z; // rotations fix punctures; unpunctured families have none
}

namespace {

// normal form in <r, s | rs = sr, s^2 = r^c>: (a, b) with b in {0, 1}
std::pair<long long, int> dtilde_normal_form(const MappingClass& mc, int c) {
    long long a = 0, b = 0;
    for (const auto& gp : mc.word) {
        if (gp.name == "r") a += gp.power;
        else if (gp.name == "s") b += gp.power;
        else throw input_error("unknown generator in twice-punctured word");
    }
    long long bm = ((b % 2) + 2) % 2;
    a += c * ((b - bm) / 2);
    return {a, static_cast<int>(bm)};
}

} // namespace

bool mapping_classes_equal(const Triangulation& base, const MappingClass& a,
                           const MappingClass& b) {
    if (a.family != b.family) return false;
    if (base.family == Family::twice_punctured_disc) {
        int c = base.surface.boundary[0];
        return dtilde_normal_form(a, c) == dtilde_normal_form(b, c);
    }
    for (const auto& arc : base.arcs)
        if (!(apply_mapping_class(base.surface, a, arc) ==
              apply_mapping_class(base.surface, b, arc)))
            return false;
    return true;
}

MarkedMappingClass mmc_make(const MappingClass& base, const std::set<int>& punctures) {
    return MarkedMappingClass{base, punctures};
}

MarkedMappingClass mmc_identity(const Triangulation& base) {
    return MarkedMappingClass{mc_identity(base), {}};
}

MarkedMappingClass mmcg_product(const Triangulation& base, const MarkedMappingClass& a,
                                const MarkedMappingClass& b) {
    MarkedMappingClass r;
    r.base = mc_concat(a.base, b.base);
    std::set<int> moved;
    for (int z : b.punctures) moved.insert(apply_to_puncture(base.surface, a.base, z));
    // symmetric difference
    for (int z : a.punctures)
        if (!moved.count(z)) r.punctures.insert(z);
    for (int z : moved)
        if (!a.punctures.count(z)) r.punctures.insert(z);
    return r;
}

MarkedMappingClass mmcg_inverse(const Triangulation& base, const MarkedMappingClass& a) {
    MarkedMappingClass r;
    r.base = mc_inverse(a.base);
    for (int z : a.punctures) r.punctures.insert(apply_to_puncture(base.surface, r.base, z));
    return r;
}

bool mmcg_equal(const Triangulation& base, const MarkedMappingClass& a,
                const MarkedMappingClass& b) {
    return a.punctures == b.punctures && mapping_classes_equal(base, a.base, b.base);
}

// ---------------------------------------------------------------------------
// induced cluster automorphisms

ClusterAutomorphism phi(const LabeledExploration& le, const MappingClass& mc) {
    int n = le.base.n();
    std::vector<RationalFn> images(n);
    for (int i = 0; i < n; ++i)
        images[i] = le.variable_of(apply_mapping_class(le.base.surface, mc, le.base.arcs[i]));
    ClusterAutomorphism f = check_cluster_automorphism(le.graph, images);
    if (f.direction != Direction::direct)
        throw error("mapping class did not induce a direct automorphism");
    return f;
}

ClusterAutomorphism psi_z(const LabeledExploration& le, int z) {
    const Triangulation& base = le.base;
    if (base.surface.boundary.empty() && base.surface.punctures == 1)
        throw closed_once_punctured_error("psi_z undefined on a closed once-punctured surface");
    if (base.family != Family::punctured_disc)
        throw unsupported_family_error("psi_z via labeled exploration needs disc coordinates");
    if (z != 0) throw index_error("puncture id out of range");
    int n = base.n();
    std::vector<RationalFn> images(n);
    for (int i = 0; i < n; ++i) {
        ArcCoord a = base.arcs[i];
        if (a.kind == ArcCoord::Kind::pd_radius)
            a.tag = a.tag == Tag::plain ? Tag::notched : Tag::plain;
        images[i] = le.variable_of(a);
    }
    ClusterAutomorphism f = check_cluster_automorphism(le.graph, images);
    if (f.direction != Direction::direct) throw error("psi_z must be direct");
    return f;
}

ClusterAutomorphism chi(const LabeledExploration& le, const MarkedMappingClass& mmc) {
    ClusterAutomorphism f = phi(le, mmc.base);
    std::vector<RationalFn> images = f.images;
    for (int z : mmc.punctures) images = compose_images(psi_z(le, z).images, images);
    ClusterAutomorphism g = check_cluster_automorphism(le.graph, images);
    if (g.direction != Direction::direct) throw error("chi must be direct");
    return g;
}

// ---------------------------------------------------------------------------
// presentations

std::vector<RationalFn> compose_images(const std::vector<RationalFn>& f,
                                       const std::vector<RationalFn>& h) {
    std::vector<RationalFn> out;
    out.reserve(h.size());
    for (const auto& hi : h) out.push_back(substitute(hi, f));
    return out;
}

namespace {

std::vector<RationalFn> identity_images(int n) {
    std::vector<RationalFn> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(RationalFn::variable(n, i));
    return out;
}

std::vector<RationalFn> evaluate_word(const std::map<std::string, ClusterAutomorphism>& gens,
                                      const Word& word, int n) {
    std::vector<RationalFn> acc = identity_images(n);
    for (const auto& gp : word) {
        if (gp.power < 0)
            throw input_error("presentation words use positive powers only");
        auto it = gens.find(gp.name);
        if (it == gens.end()) throw input_error("unknown generator: " + gp.name);
        for (int t = 0; t < gp.power; ++t) acc = compose_images(acc, it->second.images);
    }
    return acc;
}

} // namespace

std::vector<RelationReport> verify_presentation(
    const std::map<std::string, ClusterAutomorphism>& generators,
    const std::vector<Relation>& relations) {
    std::vector<RelationReport> out;
    if (generators.empty()) {
        for (const auto& r : relations) out.push_back({r.label, true});
        return out;
    }
    int n = static_cast<int>(generators.begin()->second.images.size());
    for (const auto& rel : relations) {
        RelationReport rep;
        rep.label = rel.label;
        rep.holds = evaluate_word(generators, rel.lhs, n) == evaluate_word(generators, rel.rhs, n);
        out.push_back(rep);
    }
    return out;
}

bool all_relations_hold(const std::vector<RelationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const RelationReport& r) { return r.holds; });
}

std::vector<Relation> dtilde_presentation(int n) {
    std::vector<Relation> rels;
    rels.push_back({"rho1^2 = 1", {{"rho1", 2}}, {}});
    rels.push_back({"rhon^2 = 1", {{"rhon", 2}}, {}});
    rels.push_back({"rho1 rhon = rhon rho1", {{"rho1", 1}, {"rhon", 1}}, {{"rhon", 1}, {"rho1", 1}}});
    rels.push_back({"tau rho1 = rho1 tau", {{"tau", 1}, {"rho1", 1}}, {{"rho1", 1}, {"tau", 1}}});
    rels.push_back({"tau rhon = rhon tau", {{"tau", 1}, {"rhon", 1}}, {{"rhon", 1}, {"tau", 1}}});
    rels.push_back({"tau sigma = sigma tau", {{"tau", 1}, {"sigma", 1}}, {{"sigma", 1}, {"tau", 1}}});
    rels.push_back({"sigma^2 = tau^(n-3)", {{"sigma", 2}}, {{"tau", n - 3}}});
    rels.push_back({"rho1 sigma = sigma rhon", {{"rho1", 1}, {"sigma", 1}}, {{"sigma", 1}, {"rhon", 1}}});
    rels.push_back({"sigma rho1 = rhon sigma", {{"sigma", 1}, {"rho1", 1}}, {{"rhon", 1}, {"sigma", 1}}});
    return rels;
}

std::vector<Relation> annulus_presentation(int p, int q) {
    std::vector<Relation> rels;
    rels.push_back({"r1 r2 = r2 r1", {{"r1", 1}, {"r2", 1}}, {{"r2", 1}, {"r1", 1}}});
    rels.push_back({"r1^p = r2^q", {{"r1", p}}, {{"r2", q}}});
    return rels;
}

// ---------------------------------------------------------------------------
// flip graph enumeration

FlipGraphSummary enumerate_flip_graph(const Triangulation& base, int node_cap) {
    FlipGraphSummary sum;
    std::set<std::string> visited = {base.key()};
    std::deque<Triangulation> queue = {base};
    bool capped = false;
    while (!queue.empty()) {
        Triangulation t = queue.front();
        queue.pop_front();
        for (int k = 0; k < base.n(); ++k) {
            Triangulation t2 = flip(t, k);
            std::string key = t2.key();
            if (visited.count(key)) continue;
            if (static_cast<int>(visited.size()) >= node_cap) {
                capped = true;
                continue;
            }
            visited.insert(key);
            queue.push_back(t2);
        }
    }
    sum.triangulations = static_cast<int>(visited.size());
    sum.complete = !capped;
    return sum;
}

// ---------------------------------------------------------------------------
// twice-punctured disc generators

DtildeGenerators dtilde_chi_generators(int c, int node_cap, int max_depth) {
    if (c < 3)
        throw unsupported_family_error(
            "presentation generators need >= 3 boundary points (rank >= 6)");
    DtildeGenerators out;
    out.base = punctured_disc_std(c, 2);
    Quiver q = b_matrix(out.base);
    int n = c + 3;

    // tau is the translation: the admissible source sequence at a nearby
    // acyclic seed; both directions are candidates and the presentation
    // selects the one pairing with the half twist
    auto acyclic_path = path_to_acyclic(q);
    if (!acyclic_path) throw unreachable_error("no acyclic seed found near the pocket base");
    ClusterAutomorphism tau_fwd = translation_automorphism(q, *acyclic_path);
    ClusterAutomorphism tau_bwd;
    {
        Seed anchor = initial_seed(q);
        for (int k : *acyclic_path) anchor = mutate_seed(anchor, k);
        std::vector<int> sink_order = *topological_order(anchor.quiver);
        std::reverse(sink_order.begin(), sink_order.end());
        tau_bwd = automorphism_from_word(q, *acyclic_path, sink_order);
    }

    // sigma^2 = tau^(n-3) is the expensive relation; cache the tau powers
    std::vector<std::vector<RationalFn>> tau_powers;
    for (const ClusterAutomorphism* tau : {&tau_fwd, &tau_bwd}) {
        std::vector<RationalFn> acc = tau->images;
        for (int t = 1; t < n - 3; ++t) acc = compose_images(tau->images, acc);
        tau_powers.push_back(std::move(acc));
    }

    for (int depth = 4; depth <= max_depth; depth += 2) {
        ExchangeGraph g = explore(q, node_cap, depth);

        PointBijection swapA(n), swapB(n);
        for (int i = 0; i < n; ++i) swapA[i] = swapB[i] = i;
        std::swap(swapA[0], swapA[1]);
        std::swap(swapB[2], swapB[3]);
        ClusterAutomorphism rho1 = from_quiver_automorphism(g, swapA);
        ClusterAutomorphism rhon = from_quiver_automorphism(g, swapB);

        auto swaps_toggles = [&](const ClusterAutomorphism& f) {
            return compose_images(f.images, rho1.images) == compose_images(rhon.images, f.images) &&
                   compose_images(f.images, rhon.images) == compose_images(rho1.images, f.images);
        };

        // candidates for phi(s): fix F and the chords, exchange the pockets
        // plain-to-plain, and conjugate the toggles into each other
        std::vector<ClusterAutomorphism> s_cands;
        {
            std::vector<std::string> fixed;
            for (int i = 2; i < n; ++i) fixed.push_back(RationalFn::variable(n, i).to_string());
            for (const auto& [key, node] : g.nodes) {
                std::set<std::string> have;
                for (const auto& v : node.seed.cluster) have.insert(v.to_string());
                bool contains = true;
                for (const auto& s : fixed)
                    if (!have.count(s)) {
                        contains = false;
                        break;
                    }
                if (!contains) continue;
                std::vector<RationalFn> leftover;
                std::set<std::string> fixedset(fixed.begin(), fixed.end());
                for (const auto& v : node.seed.cluster)
                    if (!fixedset.count(v.to_string())) leftover.push_back(v);
                if (leftover.size() != 2) continue;
                for (int ordering = 0; ordering < 2; ++ordering) {
                    std::vector<RationalFn> images(n);
                    images[0] = RationalFn::variable(n, 2);
                    images[1] = RationalFn::variable(n, 3);
                    images[2] = leftover[ordering];
                    images[3] = leftover[1 - ordering];
                    for (int i = 4; i < n; ++i) images[i] = RationalFn::variable(n, i);
                    try {
                        ClusterAutomorphism f = check_cluster_automorphism(g, images);
                        if (f.direction == Direction::direct && !f.is_identity() &&
                            swaps_toggles(f))
                            s_cands.push_back(f);
                    } catch (const error&) {
                    }
                }
            }
            std::stable_sort(s_cands.begin(), s_cands.end(),
                             [&](const ClusterAutomorphism& a, const ClusterAutomorphism& b) {
                                 int da = g.node(a.target_key).depth;
                                 int db = g.node(b.target_key).depth;
                                 if (da != db) return da < db;
                                 return a.image_key() < b.image_key();
                             });
        }

        std::vector<Relation> rels = dtilde_presentation(n);
        std::array<const ClusterAutomorphism*, 2> taus = {&tau_fwd, &tau_bwd};
        for (int ti = 0; ti < 2; ++ti) {
            const ClusterAutomorphism* tau = taus[ti];
            for (const auto& sc : s_cands) {
                ClusterAutomorphism sigma_el;
                sigma_el.images = (n % 2 == 0) ? compose_images(rho1.images, sc.images)
                                               : sc.images;
                sigma_el.direction = Direction::direct;
                // cheap selection: sigma^2 against the cached tau power, then
                // the full presentation as the gate
                if (compose_images(sigma_el.images, sigma_el.images) != tau_powers[ti])
                    continue;
                std::map<std::string, ClusterAutomorphism> gens = {
                    {"tau", *tau}, {"sigma", sigma_el}, {"rho1", rho1}, {"rhon", rhon}};
                if (all_relations_hold(verify_presentation(gens, rels))) {
                    out.tau = *tau;
                    out.sigma = sigma_el;
                    out.rho1 = rho1;
                    out.rhon = rhon;
                    out.phi_s = sc;
                    // tau = psi_u psi_w phi(r), so phi(r) = psi_u psi_w tau
                    out.phi_r.images = compose_images(
                        rho1.images, compose_images(rhon.images, tau->images));
                    out.phi_r.direction = Direction::direct;
                    out.phi_r.target_key = canonical_cluster_key(out.phi_r.images);
                    out.graph = std::move(g);
                    return out;
                }
            }
        }
    }
    throw unreachable_error("presentation generators not found within exploration caps");
}

} // namespace caut
