#pragma once

#include "pscard/ground.hpp"
#include "pscard/propcore.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pscard {

/// Simple undirected graph on vertices 1..n.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges; // u < v
};

/// m distinct edges drawn uniformly without replacement; regeneration with
/// the same seed is byte-identical across platforms.
Graph random_graph(int n, int m, std::uint64_t seed);

enum class VcEncoding { Positional, CAtom };

struct BenchmarkInstance {
    std::string family;
    std::map<std::string, std::string> params;
    std::string dataText;
    std::string programText;
    Bindings bindings;
    Graph graph; // vertex-cover only

    Theory theory() const;
};

BenchmarkInstance gen_vertex_cover(const Graph& g, int k, VcEncoding enc);
BenchmarkInstance gen_vertex_cover(int n, int mEdges, int k, std::uint64_t seed, VcEncoding enc);
BenchmarkInstance gen_nqueens(int n);
BenchmarkInstance gen_pigeonhole(int pigeons, int holes);
BenchmarkInstance gen_schur(int n, int bins);

/// Renders a model as a human-readable solution and re-verifies it against
/// the family's combinatorial constraint with an independent checker.
/// Throws Error if the model fails the checker (solver or encoding bug).
std::string extract_solution(const BenchmarkInstance& inst, const GroundTheory& gt,
                             const Model& m);

// direct checkers / brute-force oracles
bool is_vertex_cover(const Graph& g, const std::vector<int>& cover);
int min_vertex_cover_bruteforce(const Graph& g);
bool queens_ok(int n, const std::vector<std::pair<int, int>>& queens);
std::uint64_t count_queens_bruteforce(int n);
bool pigeonhole_ok(int pigeons, int holes, const std::vector<std::pair<int, int>>& placement);
bool schur_ok(int n, int bins, const std::vector<std::pair<int, int>>& assignment);

} // namespace pscard
