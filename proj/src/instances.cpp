#include "pscard/instances.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <sstream>

namespace pscard {

namespace {

// mt19937_64 raw output is fully specified; the bounded draw avoids
// std::uniform_int_distribution, whose mapping varies across libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

std::string vtx_name(int i) { return "v" + std::to_string(i); }

} // namespace

Graph random_graph(int n, int m, std::uint64_t seed) {
    if (n < 0 || m < 0)
        throw Error("graph parameters must be non-negative");
    const std::uint64_t maxEdges = std::uint64_t(n) * (n - 1) / 2;
    if (static_cast<std::uint64_t>(m) > maxEdges)
        throw Error("requested " + std::to_string(m) + " edges but K_" + std::to_string(n) +
                    " has only " + std::to_string(maxEdges));
    Graph g;
    g.n = n;
    std::mt19937_64 rng(seed);
    std::set<std::pair<int, int>> picked;
    while (picked.size() < static_cast<std::size_t>(m)) {
        int u = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(n))) + 1;
        int v = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(n))) + 1;
        if (u == v)
            continue;
        if (u > v)
            std::swap(u, v);
        picked.insert({u, v});
    }
    g.edges.assign(picked.begin(), picked.end());
    return g;
}

Theory BenchmarkInstance::theory() const {
    return assemble_theory({dataText}, {programText}, bindings);
}

BenchmarkInstance gen_vertex_cover(const Graph& g, int k, VcEncoding enc) {
    if (k < 0)
        throw Error("cover size must be non-negative");
    BenchmarkInstance inst;
    inst.family = enc == VcEncoding::CAtom ? "vertex-cover-catom" : "vertex-cover";
    inst.params["n"] = std::to_string(g.n);
    inst.params["m"] = std::to_string(g.edges.size());
    inst.params["k"] = std::to_string(k);
    inst.graph = g;

    std::ostringstream d;
    for (int v = 1; v <= g.n; ++v)
        d << "vtx(" << vtx_name(v) << ").\n";
    for (auto [u, v] : g.edges)
        d << "edge(" << vtx_name(u) << "," << vtx_name(v) << ").\n";
    if (enc == VcEncoding::Positional) {
        d << "size(" << k << ").\n";
        for (int i = 1; i <= g.n; ++i)
            d << "pos(" << i << ").\n";
        inst.programText = "vpos(I,X) -> vtx(X).\n"
                           "vpos(I,X) -> pos(I).\n"
                           "vtx(X) -> vpos(_,X).\n"
                           "vpos(I,X), vpos(J,X) -> I = J.\n"
                           "vpos(I,X), vpos(I,Y) -> X = Y.\n"
                           "edge(X,Y), vpos(I,X), vpos(J,Y), size(K) -> I <= K ; J <= K.\n";
    } else {
        inst.programText = "invc(X) -> vtx(X).\n"
                           "{ invc(_) } k.\n"
                           "edge(X,Y) -> invc(X) ; invc(Y).\n";
        inst.bindings["k"] = k;
    }
    inst.dataText = d.str();
    return inst;
}

BenchmarkInstance gen_vertex_cover(int n, int mEdges, int k, std::uint64_t seed, VcEncoding enc) {
    BenchmarkInstance inst = gen_vertex_cover(random_graph(n, mEdges, seed), k, enc);
    inst.params["seed"] = std::to_string(seed);
    return inst;
}

BenchmarkInstance gen_nqueens(int n) {
    if (n < 1)
        throw Error("board size must be positive");
    BenchmarkInstance inst;
    inst.family = "nqueens";
    inst.params["n"] = std::to_string(n);
    std::ostringstream d;
    for (int i = 1; i <= n; ++i)
        d << "pos(" << i << ").\n";
    inst.dataText = d.str();
    inst.programText = "q(R,C) -> pos(R).\n"
                       "q(R,C) -> pos(C).\n"
                       "q(R,C1), q(R,C2) -> C1 = C2.\n"
                       "q(R1,C), q(R2,C) -> R1 = R2.\n"
                       "q(R,C), q(R+I,C+I) -> F.\n"
                       "q(R,C), q(R+I,C-I) -> F.\n"
                       "pos(R) -> q(R,_).\n";
    return inst;
}

BenchmarkInstance gen_pigeonhole(int pigeons, int holes) {
    if (pigeons < 1 || holes < 1)
        throw Error("pigeonhole parameters must be positive");
    BenchmarkInstance inst;
    inst.family = "pigeonhole";
    inst.params["p"] = std::to_string(pigeons);
    inst.params["h"] = std::to_string(holes);
    std::ostringstream d;
    for (int i = 1; i <= pigeons; ++i)
        d << "pigeon(" << i << ").\n";
    for (int j = 1; j <= holes; ++j)
        d << "hole(" << j << ").\n";
    inst.dataText = d.str();
    inst.programText = "in(P,H) -> pigeon(P).\n"
                       "in(P,H) -> hole(H).\n"
                       "pigeon(P) -> 1 { in(P,_) } 1.\n"
                       "hole(H) -> { in(_,H) } 1.\n";
    return inst;
}

BenchmarkInstance gen_schur(int n, int bins) {
    if (n < 1 || bins < 1)
        throw Error("Schur parameters must be positive");
    BenchmarkInstance inst;
    inst.family = "schur";
    inst.params["n"] = std::to_string(n);
    inst.params["k"] = std::to_string(bins);
    std::ostringstream d;
    for (int i = 1; i <= n; ++i)
        d << "num(" << i << ").\n";
    for (int b = 1; b <= bins; ++b)
        d << "bin(" << b << ").\n";
    inst.dataText = d.str();
    inst.programText = "inbin(X,B) -> num(X).\n"
                       "inbin(X,B) -> bin(B).\n"
                       "num(X) -> 1 { inbin(X,_) } 1.\n"
                       "bin(B), inbin(X,B), inbin(Y,B), X + Y = Z, inbin(Z,B) -> F.\n";
    return inst;
}

namespace {

// True atoms of the model parsed back to (pred, int-or-symbol args).
struct NamedAtom {
    std::string pred;
    std::vector<std::string> args;
};

std::vector<NamedAtom> true_atoms(const GroundTheory& gt, const Model& m) {
    std::vector<NamedAtom> out;
    for (AtomId a = 0; a < gt.numAtoms(); ++a) {
        if (!m.contains(a))
            continue;
        const std::string& name = gt.atomNames[a];
        NamedAtom na;
        auto lp = name.find('(');
        if (lp == std::string::npos) {
            na.pred = name;
        } else {
            na.pred = name.substr(0, lp);
            std::string inner = name.substr(lp + 1, name.size() - lp - 2);
            std::string cur;
            for (char c : inner) {
                if (c == ',') {
                    na.args.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            na.args.push_back(cur);
        }
        out.push_back(std::move(na));
    }
    return out;
}

int param_int(const BenchmarkInstance& inst, const std::string& key) {
    return std::stoi(inst.params.at(key));
}

} // namespace

bool is_vertex_cover(const Graph& g, const std::vector<int>& cover) {
    std::set<int> w(cover.begin(), cover.end());
    for (auto [u, v] : g.edges)
        if (!w.count(u) && !w.count(v))
            return false;
    return true;
}

int min_vertex_cover_bruteforce(const Graph& g) {
    if (g.n > 20)
        throw Error("brute-force cover limited to 20 vertices");
    int best = g.n;
    for (std::uint32_t s = 0; s < (1u << g.n); ++s) {
        bool covers = true;
        for (auto [u, v] : g.edges)
            if (!(s & (1u << (u - 1))) && !(s & (1u << (v - 1)))) {
                covers = false;
                break;
            }
        if (covers)
            best = std::min(best, std::popcount(s));
    }
    return best;
}

bool queens_ok(int n, const std::vector<std::pair<int, int>>& queens) {
    if (static_cast<int>(queens.size()) != n)
        return false;
    for (std::size_t i = 0; i < queens.size(); ++i) {
        auto [r1, c1] = queens[i];
        if (r1 < 1 || r1 > n || c1 < 1 || c1 > n)
            return false;
        for (std::size_t j = i + 1; j < queens.size(); ++j) {
            auto [r2, c2] = queens[j];
            if (r1 == r2 || c1 == c2 || r1 - c1 == r2 - c2 || r1 + c1 == r2 + c2)
                return false;
        }
    }
    return true;
}

std::uint64_t count_queens_bruteforce(int n) {
    // permutations of columns with diagonal checks
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        perm[static_cast<std::size_t>(i)] = i + 1;
    std::uint64_t count = 0;
    do {
        bool ok = true;
        for (int i = 0; ok && i < n; ++i)
            for (int j = i + 1; ok && j < n; ++j)
                if (std::abs(perm[i] - perm[j]) == j - i)
                    ok = false;
        if (ok)
            ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

bool pigeonhole_ok(int pigeons, int holes, const std::vector<std::pair<int, int>>& placement) {
    std::set<int> seenPigeon;
    std::set<int> seenHole;
    for (auto [p, h] : placement) {
        if (p < 1 || p > pigeons || h < 1 || h > holes)
            return false;
        if (!seenPigeon.insert(p).second)
            return false; // a pigeon in two holes
        if (!seenHole.insert(h).second)
            return false; // two pigeons in one hole
    }
    return static_cast<int>(seenPigeon.size()) == pigeons;
}

bool schur_ok(int n, int bins, const std::vector<std::pair<int, int>>& assignment) {
    std::map<int, int> binOf;
    for (auto [x, b] : assignment) {
        if (x < 1 || x > n || b < 1 || b > bins)
            return false;
        if (binOf.count(x))
            return false;
        binOf[x] = b;
    }
    if (static_cast<int>(binOf.size()) != n)
        return false;
    for (int x = 1; x <= n; ++x)
        for (int y = x; y <= n; ++y) {
            int z = x + y;
            if (z > n)
                break;
            if (binOf[x] == binOf[y] && binOf[y] == binOf[z])
                return false;
        }
    return true;
}

std::string extract_solution(const BenchmarkInstance& inst, const GroundTheory& gt,
                             const Model& m) {
    std::ostringstream out;
    const auto atoms = true_atoms(gt, m);
    if (inst.family == "vertex-cover" || inst.family == "vertex-cover-catom") {
        const int k = param_int(inst, "k");
        std::set<int> cover;
        for (const NamedAtom& a : atoms) {
            if (inst.family == "vertex-cover-catom" && a.pred == "invc")
                cover.insert(std::stoi(a.args[0].substr(1)));
            if (inst.family == "vertex-cover" && a.pred == "vpos" && a.args[0][0] != 'v' &&
                std::stoi(a.args[0]) <= k)
                cover.insert(std::stoi(a.args[1].substr(1)));
        }
        std::vector<int> w(cover.begin(), cover.end());
        if (static_cast<int>(w.size()) > k || !is_vertex_cover(inst.graph, w))
            throw Error("model is not a vertex cover of size <= " + std::to_string(k));
        out << "cover {";
        for (std::size_t i = 0; i < w.size(); ++i)
            out << (i ? "," : "") << vtx_name(w[i]);
        out << "}";
        return out.str();
    }
    if (inst.family == "nqueens") {
        const int n = param_int(inst, "n");
        std::vector<std::pair<int, int>> queens;
        for (const NamedAtom& a : atoms)
            if (a.pred == "q")
                queens.push_back({std::stoi(a.args[0]), std::stoi(a.args[1])});
        if (!queens_ok(n, queens))
            throw Error("model is not a valid " + std::to_string(n) + "-queens placement");
        std::sort(queens.begin(), queens.end());
        std::vector<int> col(static_cast<std::size_t>(n) + 1, 0);
        for (auto [r, c] : queens)
            col[static_cast<std::size_t>(r)] = c;
        for (int r = 1; r <= n; ++r) {
            for (int c = 1; c <= n; ++c)
                out << (col[static_cast<std::size_t>(r)] == c ? 'Q' : '.');
            out << '\n';
        }
        return out.str();
    }
    if (inst.family == "pigeonhole") {
        std::vector<std::pair<int, int>> placement;
        for (const NamedAtom& a : atoms)
            if (a.pred == "in")
                placement.push_back({std::stoi(a.args[0]), std::stoi(a.args[1])});
        if (!pigeonhole_ok(param_int(inst, "p"), param_int(inst, "h"), placement))
            throw Error("model is not a valid pigeon placement");
        std::sort(placement.begin(), placement.end());
        for (auto [p, h] : placement)
            out << "pigeon " << p << " -> hole " << h << "\n";
        return out.str();
    }
    if (inst.family == "schur") {
        const int n = param_int(inst, "n");
        const int bins = param_int(inst, "k");
        std::vector<std::pair<int, int>> assignment;
        for (const NamedAtom& a : atoms)
            if (a.pred == "inbin")
                assignment.push_back({std::stoi(a.args[0]), std::stoi(a.args[1])});
        if (!schur_ok(n, bins, assignment))
            throw Error("model is not a sum-free bin assignment");
        for (int b = 1; b <= bins; ++b) {
            out << "bin " << b << ":";
            for (auto [x, bb] : assignment)
                if (bb == b)
                    out << ' ' << x;
            out << '\n';
        }
        return out.str();
    }
    throw Error("unknown family '" + inst.family + "'");
}

} // namespace pscard
