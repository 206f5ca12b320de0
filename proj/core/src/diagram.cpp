#include "knotforge/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "knotforge/error.hpp"

namespace knotforge {

std::string_view to_string(KnotType k) {
    switch (k) {
        case KnotType::unknot: return "unknot";
        case KnotType::k3_1: return "3_1";
        case KnotType::k4_1: return "4_1";
        case KnotType::k5_1: return "5_1";
        case KnotType::k5_2: return "5_2";
        case KnotType::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<KnotType> parse_knot_type(std::string_view s) {
    static const std::map<std::string_view, KnotType> names{
        {"unknot", KnotType::unknot},      {"0_1", KnotType::unknot},
        {"3_1", KnotType::k3_1},           {"trefoil", KnotType::k3_1},
        {"4_1", KnotType::k4_1},           {"figure-eight", KnotType::k4_1},
        {"fig8", KnotType::k4_1},          {"5_1", KnotType::k5_1},
        {"cinquefoil", KnotType::k5_1},    {"5_2", KnotType::k5_2},
        {"three-twist", KnotType::k5_2},   {"unknown", KnotType::unknown},
    };
    auto it = names.find(s);
    if (it == names.end()) return std::nullopt;
    return it->second;
}

std::string to_string(const SignPattern& p) {
    std::ostringstream os;
    for (std::size_t k = 0; k < p.constraints.size(); ++k) {
        const auto& c = p.constraints[k];
        if (k) os << ", ";
        os << "h(t" << c.i << ") " << (c.rel == Relation::greater ? '>' : '<') << " h(t" << c.j << ")";
    }
    return os.str();
}

Diagram Diagram::from_gauss(std::vector<Passage> code) {
    if (code.size() % 2 != 0) fail(ErrorKind::invalid_input, "Gauss code has odd length");
    const int n = static_cast<int>(code.size() / 2);
    std::vector<int> overs(static_cast<std::size_t>(n), 0), unders(static_cast<std::size_t>(n), 0);
    std::vector<int> signs(static_cast<std::size_t>(n), 0);
    for (const auto& p : code) {
        if (p.crossing < 1 || p.crossing > n)
            fail(ErrorKind::invalid_input, "Gauss code label out of range 1..n");
        if (p.sign != 1 && p.sign != -1) fail(ErrorKind::invalid_input, "Gauss code sign must be +1 or -1");
        const auto k = static_cast<std::size_t>(p.crossing - 1);
        (p.over ? overs : unders)[k] += 1;
        if (signs[k] != 0 && signs[k] != p.sign)
            fail(ErrorKind::invalid_input, "Gauss code has inconsistent signs at one crossing");
        signs[k] = p.sign;
    }
    for (int k = 0; k < n; ++k)
        if (overs[static_cast<std::size_t>(k)] != 1 || unders[static_cast<std::size_t>(k)] != 1)
            fail(ErrorKind::invalid_input, "each crossing must appear once over and once under");
    Diagram d;
    d.gauss_ = std::move(code);
    return d;
}

Diagram Diagram::parse_gauss(std::string_view text) {
    std::vector<Passage> code;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
    };
    skip();
    while (i < text.size()) {
        Passage p;
        const char ou = text[i];
        if (ou != 'O' && ou != 'U') fail(ErrorKind::invalid_input, "Gauss code: expected O or U");
        p.over = ou == 'O';
        ++i;
        int label = 0;
        bool digits = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            label = label * 10 + (text[i] - '0');
            ++i;
            digits = true;
        }
        if (!digits) fail(ErrorKind::invalid_input, "Gauss code: expected crossing label");
        if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
            fail(ErrorKind::invalid_input, "Gauss code: expected sign");
        p.sign = text[i] == '+' ? 1 : -1;
        ++i;
        p.crossing = label;
        code.push_back(p);
        skip();
    }
    return from_gauss(std::move(code));
}

Diagram Diagram::from_pd(const std::vector<PdCrossing>& pd) {
    const int n = static_cast<int>(pd.size());
    if (n == 0) return {};
    const int edges = 2 * n;
    auto next = [&](int e) { return e % edges + 1; };
    std::vector<int> seen(static_cast<std::size_t>(edges) + 1, 0);
    for (const auto& x : pd)
        for (int e : x) {
            if (e < 1 || e > edges) fail(ErrorKind::invalid_input, "PD code edge label out of range");
            ++seen[static_cast<std::size_t>(e)];
        }
    for (int e = 1; e <= edges; ++e)
        if (seen[static_cast<std::size_t>(e)] != 2)
            fail(ErrorKind::invalid_input, "PD code: every edge must appear exactly twice");

    // incoming[e] = (crossing, over?) where edge e ends.
    std::vector<std::pair<int, bool>> incoming(static_cast<std::size_t>(edges) + 1, {-1, false});
    std::vector<int> signs(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const auto& [a, b, c, d] = pd[static_cast<std::size_t>(k)];
        if (c != next(a)) fail(ErrorKind::invalid_input, "PD code is not a single-component knot");
        incoming[static_cast<std::size_t>(a)] = {k, false};
        if (b == next(d)) {
            incoming[static_cast<std::size_t>(d)] = {k, true};
            signs[static_cast<std::size_t>(k)] = 1;
        } else if (d == next(b)) {
            incoming[static_cast<std::size_t>(b)] = {k, true};
            signs[static_cast<std::size_t>(k)] = -1;
        } else {
            fail(ErrorKind::invalid_input, "PD code is not a single-component knot");
        }
    }
    std::vector<Passage> code;
    for (int e = 1; e <= edges; ++e) {
        const auto [k, over] = incoming[static_cast<std::size_t>(e)];
        if (k < 0) fail(ErrorKind::invalid_input, "PD code is not a single-component knot");
        code.push_back({k + 1, over, signs[static_cast<std::size_t>(k)]});
    }
    return from_gauss(std::move(code));
}

std::vector<ArcIncidence> Diagram::incidences() const {
    const int n = crossing_count();
    std::vector<ArcIncidence> out(static_cast<std::size_t>(n));
    int unders_seen = 0;
    for (const auto& p : gauss_) {
        auto& inc = out[static_cast<std::size_t>(p.crossing - 1)];
        inc.sign = p.sign;
        if (p.over) {
            inc.over = (unders_seen + n - 1) % n;
        } else {
            inc.under_in = (unders_seen + n - 1) % n;
            inc.under_out = unders_seen;
            ++unders_seen;
        }
    }
    return out;
}

std::vector<PdCrossing> Diagram::pd() const {
    const int n = crossing_count();
    const int edges = 2 * n;
    std::vector<int> over_pos(static_cast<std::size_t>(n)), under_pos(static_cast<std::size_t>(n));
    for (int p = 0; p < edges; ++p) {
        const auto& ps = gauss_[static_cast<std::size_t>(p)];
        (ps.over ? over_pos : under_pos)[static_cast<std::size_t>(ps.crossing - 1)] = p + 1;
    }
    auto in_edge = [&](int pos) { return pos == 1 ? edges : pos - 1; };
    auto out_edge = [&](int pos) { return pos; };
    std::vector<PdCrossing> out;
    for (int k = 0; k < n; ++k) {
        const int u = under_pos[static_cast<std::size_t>(k)];
        const int o = over_pos[static_cast<std::size_t>(k)];
        const int sign = gauss_[static_cast<std::size_t>(u - 1)].sign;
        if (sign > 0) {
            out.push_back({in_edge(u), out_edge(o), out_edge(u), in_edge(o)});
        } else {
            out.push_back({in_edge(u), in_edge(o), out_edge(u), out_edge(o)});
        }
    }
    return out;
}

Diagram Diagram::canonical() const {
    if (gauss_.empty()) return *this;
    const std::size_t len = gauss_.size();
    std::vector<Passage> best;
    for (std::size_t r = 0; r < len; ++r) {
        std::map<int, int> relabel;
        std::vector<Passage> cand;
        cand.reserve(len);
        for (std::size_t k = 0; k < len; ++k) {
            Passage p = gauss_[(r + k) % len];
            auto it = relabel.find(p.crossing);
            if (it == relabel.end()) it = relabel.emplace(p.crossing, static_cast<int>(relabel.size()) + 1).first;
            p.crossing = it->second;
            cand.push_back(p);
        }
        auto key = [](const std::vector<Passage>& v) {
            std::vector<std::array<int, 3>> k;
            for (const auto& p : v) k.push_back({p.crossing, p.over ? 0 : 1, -p.sign});
            return k;
        };
        if (best.empty() || key(cand) < key(best)) best = std::move(cand);
    }
    Diagram d;
    d.gauss_ = std::move(best);
    return d;
}

Diagram Diagram::reversed() const {
    Diagram d;
    d.gauss_.assign(gauss_.rbegin(), gauss_.rend());
    return d;
}

Diagram Diagram::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != crossing_count())
        fail(ErrorKind::invalid_input, "relabeling permutation has the wrong size");
    std::vector<Passage> code(gauss_);
    for (auto& p : code) p.crossing = perm[static_cast<std::size_t>(p.crossing - 1)];
    return from_gauss(std::move(code));
}

std::string gauss_string(const Diagram& d) {
    std::ostringstream os;
    for (const auto& p : d.gauss()) os << (p.over ? 'O' : 'U') << p.crossing << (p.sign > 0 ? '+' : '-');
    return os.str();
}

std::string pd_string(const Diagram& d) {
    std::ostringstream os;
    os << "PD[";
    const auto pd = d.pd();
    for (std::size_t k = 0; k < pd.size(); ++k) {
        if (k) os << ", ";
        os << "X[" << pd[k][0] << ',' << pd[k][1] << ',' << pd[k][2] << ',' << pd[k][3] << ']';
    }
    os << ']';
    return os.str();
}

std::vector<Crossing> assign_over_under(const RationalFunction& h, const std::vector<DoublePoint>& dps) {
    std::vector<Crossing> out;
    out.reserve(dps.size());
    for (const auto& dp : dps) {
        const double hs = h(dp.s);
        const double ht = h(dp.t);
        if (!(std::abs(hs - ht) >= 1e-9 * std::max({1.0, std::abs(hs), std::abs(ht)}))) {
            std::ostringstream os;
            os << "ambiguous crossing " << dp.index + 1 << ": h(s) = " << hs << ", h(t) = " << ht;
            fail(ErrorKind::degenerate, os.str());
        }
        const bool over = hs > ht;
        out.push_back({dp, over, over ? dp.orientation : -dp.orientation});
    }
    return out;
}

SignPattern pattern_of(const std::vector<Crossing>& crossings, const std::vector<DoublePoint>& dps) {
    SignPattern p;
    for (const auto& c : crossings) {
        const auto [i, j] = parameter_indices(dps, c.dp);
        p.constraints.push_back({i, j, c.over_at_s ? Relation::greater : Relation::less});
    }
    std::sort(p.constraints.begin(), p.constraints.end(),
              [](const Constraint& a, const Constraint& b) { return a.i < b.i; });
    return p;
}

Satisfaction satisfies(const RationalFunction& h, const std::vector<DoublePoint>& dps,
                       const SignPattern& pattern) {
    const auto params = crossing_parameters(dps);
    const int count = static_cast<int>(params.size());
    Satisfaction out;
    for (const auto& c : pattern.constraints) {
        if (c.i < 1 || c.i > count || c.j < 1 || c.j > count)
            fail(ErrorKind::invalid_input, "pattern index outside the crossing parameters");
        const double gap = h(params[static_cast<std::size_t>(c.i - 1)]) - h(params[static_cast<std::size_t>(c.j - 1)]);
        const double m = c.rel == Relation::greater ? gap : -gap;
        out.margins.push_back(m);
        if (!(m > 0)) out.ok = false;
    }
    return out;
}

std::vector<Crossing> crossings_from_pattern(const std::vector<DoublePoint>& dps, const SignPattern& pattern) {
    if (pattern.constraints.size() != dps.size())
        fail(ErrorKind::invalid_input, "pattern must constrain every double point exactly once");
    std::vector<Crossing> out;
    for (const auto& dp : dps) {
        const auto [i, j] = parameter_indices(dps, dp);
        const Constraint* match = nullptr;
        for (const auto& c : pattern.constraints)
            if ((c.i == i && c.j == j) || (c.i == j && c.j == i)) match = &c;
        if (!match) {
            std::ostringstream os;
            os << "pattern has no constraint for the double point (t" << i << ", t" << j << ")";
            fail(ErrorKind::invalid_input, os.str());
        }
        bool over = match->rel == Relation::greater;
        if (match->i == j) over = !over;
        out.push_back({dp, over, over ? dp.orientation : -dp.orientation});
    }
    return out;
}

Diagram diagram_from_crossings(const std::vector<DoublePoint>& dps, const std::vector<Crossing>& crossings) {
    struct Event {
        double param;
        int label;
        bool over;
        int sign;
    };
    std::vector<Event> events;
    for (std::size_t k = 0; k < crossings.size(); ++k) {
        const auto& c = crossings[k];
        const int label = static_cast<int>(k) + 1;
        events.push_back({c.dp.s, label, c.over_at_s, c.sign});
        events.push_back({c.dp.t, label, !c.over_at_s, c.sign});
    }
    (void)dps;
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.param < b.param; });
    std::vector<Passage> code;
    for (const auto& e : events) code.push_back({e.label, e.over, e.sign});
    Diagram d = Diagram::from_gauss(std::move(code));
    d.crossings_ = crossings;
    return d;
}

Diagram build_diagram(const RationalFunction& f, const RationalFunction& g, const RationalFunction& h,
                      const std::vector<DoublePoint>& dps, double tol) {
    const auto rep = embedding_report(Parameterization{f, g, h}, dps, tol);
    if (!rep.ok) {
        std::string msg = "not a compact embedding:";
        for (const auto& s : rep.issues) msg += " " + s + ";";
        fail(ErrorKind::degenerate, msg);
    }
    return diagram_from_crossings(dps, assign_over_under(h, dps));
}

namespace {

// Reduced row echelon form of the Fox 3-coloring relations; returns pivot columns.
std::vector<int> coloring_rref(const Diagram& d, std::vector<std::vector<int>>& m) {
    const int n = d.crossing_count();
    m.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    const auto inc = d.incidences();
    for (int k = 0; k < n; ++k) {
        auto& row = m[static_cast<std::size_t>(k)];
        const auto& c = inc[static_cast<std::size_t>(k)];
        row[static_cast<std::size_t>(c.over)] += 2;
        row[static_cast<std::size_t>(c.under_in)] += 2;  // -1 mod 3
        row[static_cast<std::size_t>(c.under_out)] += 2;
        for (int& v : row) v %= 3;
    }
    std::vector<int> pivots;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = rank;
        while (piv < n && m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)] == 0) ++piv;
        if (piv == n) continue;
        std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(rank)]);
        auto& prow = m[static_cast<std::size_t>(rank)];
        const int inv = prow[static_cast<std::size_t>(col)];  // 1 and 2 are self-inverse mod 3
        for (int& v : prow) v = (v * inv) % 3;
        for (int r = 0; r < n; ++r) {
            if (r == rank) continue;
            auto& row = m[static_cast<std::size_t>(r)];
            const int f = row[static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int c = 0; c < n; ++c)
                row[static_cast<std::size_t>(c)] = ((row[static_cast<std::size_t>(c)] - f * prow[static_cast<std::size_t>(c)]) % 3 + 3) % 3;
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

}  // namespace

std::int64_t tricolor_count(const Diagram& d) {
    const int n = d.crossing_count();
    if (n == 0) return 3;
    std::vector<std::vector<int>> m;
    const auto pivots = coloring_rref(d, m);
    std::int64_t count = 1;
    for (std::size_t k = pivots.size(); k < static_cast<std::size_t>(n); ++k) count *= 3;
    return count;
}

std::optional<std::vector<int>> tricoloring(const Diagram& d) {
    const int n = d.crossing_count();
    if (n == 0) return std::nullopt;
    std::vector<std::vector<int>> m;
    const auto pivots = coloring_rref(d, m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<int> v(static_cast<std::size_t>(n), 0);
        v[static_cast<std::size_t>(free)] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = (3 - m[r][static_cast<std::size_t>(free)]) % 3;
        if (std::any_of(v.begin(), v.end(), [&](int c) { return c != v.front(); })) return v;
    }
    return std::nullopt;
}

IntPolynomial alexander(const Diagram& d) {
    const int n = d.crossing_count();
    if (n == 0) return IntPolynomial{1};
    const IntPolynomial one_minus_t{1, -1};
    const IntPolynomial t{0, 1};
    const IntPolynomial minus_one{-1};
    std::vector<std::vector<IntPolynomial>> m(static_cast<std::size_t>(n),
                                              std::vector<IntPolynomial>(static_cast<std::size_t>(n)));
    const auto inc = d.incidences();
    for (int k = 0; k < n; ++k) {
        auto& row = m[static_cast<std::size_t>(k)];
        const auto& c = inc[static_cast<std::size_t>(k)];
        row[static_cast<std::size_t>(c.over)] = row[static_cast<std::size_t>(c.over)] + one_minus_t;
        if (c.sign > 0) {
            row[static_cast<std::size_t>(c.under_in)] = row[static_cast<std::size_t>(c.under_in)] + t;
            row[static_cast<std::size_t>(c.under_out)] = row[static_cast<std::size_t>(c.under_out)] + minus_one;
        } else {
            row[static_cast<std::size_t>(c.under_in)] = row[static_cast<std::size_t>(c.under_in)] + minus_one;
            row[static_cast<std::size_t>(c.under_out)] = row[static_cast<std::size_t>(c.under_out)] + t;
        }
    }
    m.pop_back();
    for (auto& row : m) row.pop_back();
    const IntPolynomial det = bareiss_determinant(std::move(m)).normalized();
    if (det.is_zero()) fail(ErrorKind::invalid_input, "alexander: diagram is not a knot");
    return det;
}

std::int64_t determinant(const Diagram& d) {
    const std::int64_t v = alexander(d).eval(-1);
    return v < 0 ? -v : v;
}

KnotType identify(const Diagram& d) {
    const auto delta = alexander(d);
    const auto det = determinant(d);
    struct Entry {
        std::int64_t det;
        IntPolynomial poly;
        KnotType knot;
    };
    static const std::vector<Entry> table{
        {1, IntPolynomial{1}, KnotType::unknot},
        {3, IntPolynomial{1, -1, 1}, KnotType::k3_1},
        {5, IntPolynomial{1, -3, 1}, KnotType::k4_1},
        {5, IntPolynomial{1, -1, 1, -1, 1}, KnotType::k5_1},
        {7, IntPolynomial{2, -3, 2}, KnotType::k5_2},
    };
    for (const auto& e : table)
        if (e.det == det && e.poly == delta) return e.knot;
    return KnotType::unknown;
}

SignPattern descending_pattern(const std::vector<DoublePoint>& dps) {
    std::vector<Crossing> cs;
    for (const auto& dp : dps) cs.push_back({dp, true, dp.orientation});
    return pattern_of(cs, dps);
}

std::vector<SignPattern> enumerate_patterns(const std::vector<DoublePoint>& dps, KnotType target, int limit) {
    const std::size_t n = dps.size();
    if (n > 20) fail(ErrorKind::invalid_input, "enumerate_patterns: too many crossings");
    std::vector<SignPattern> out;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<Crossing> cs;
        for (std::size_t k = 0; k < n; ++k) {
            const bool over = ((mask >> k) & 1U) == 0;
            cs.push_back({dps[k], over, over ? dps[k].orientation : -dps[k].orientation});
        }
        if (identify(diagram_from_crossings(dps, cs)) != target) continue;
        out.push_back(pattern_of(cs, dps));
        if (limit > 0 && static_cast<int>(out.size()) >= limit) break;
    }
    return out;
}

CurveIdentification identify_curve(const Parameterization& p, const SolverOptions& opts) {
    if (!p.z) fail(ErrorKind::invalid_input, "identify_curve: curve has no z coordinate");
    struct View {
        Axis a, b, height;
    };
    const View views[] = {{Axis::x, Axis::y, Axis::z}, {Axis::x, Axis::z, Axis::y}, {Axis::y, Axis::z, Axis::x}};
    std::string first_error;
    for (const auto& v : views) {
        try {
            const auto& f = p.coord(v.a);
            const auto& g = p.coord(v.b);
            const auto& h = p.coord(v.height);
            auto dps = double_points(f, g, opts);
            Diagram d = build_diagram(f, g, h, dps, opts.tol);
            CurveIdentification out;
            out.knot = identify(d);
            out.diagram = std::move(d);
            out.dps = std::move(dps);
            out.height = v.height;
            return out;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::degenerate) throw;
            if (first_error.empty()) first_error = e.what();
        }
    }
    fail(ErrorKind::degenerate, "no regular projection: " + first_error);
}

}  // namespace knotforge
