#include "homlab/graph.hpp"

#include "homlab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace homlab {

namespace {

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

int parse_positive(std::string_view text, std::string_view what) {
    text = trim(text);
    if (text.empty() || text.size() > 6) fail(ErrorKind::ParseError, "bad size in graph name '" + std::string(what) + "'");
    int value = 0;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(ErrorKind::ParseError, "bad size in graph name '" + std::string(what) + "'");
        value = value * 10 + (c - '0');
    }
    return value;
}

}  // namespace

Graph::Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxGraphVertices) fail(ErrorKind::LimitExceeded, "graph size must be in 0..64");
    adjacency_.assign(static_cast<std::size_t>(n), 0);
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            fail(ErrorKind::InvalidSpec, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
        if (u == v) fail(ErrorKind::InvalidSpec, "self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (adjacency_[static_cast<std::size_t>(u)] & bit(v))
            fail(ErrorKind::InvalidSpec, "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        adjacency_[static_cast<std::size_t>(u)] |= bit(v);
        adjacency_[static_cast<std::size_t>(v)] |= bit(u);
        edges_.emplace_back(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
}

int Graph::degree(int v) const { return std::popcount(neighbors(v)); }

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    return (neighbors(u) & bit(v)) != 0;
}

int Graph::max_degree() const {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

bool Graph::has_isolated_vertex() const {
    for (int v = 0; v < n_; ++v)
        if (neighbors(v) == 0) return true;
    return false;
}

Graph build_named(const GraphFamilySpec& spec) {
    auto need = [&](std::size_t count) {
        if (spec.params.size() != count) fail(ErrorKind::InvalidSpec, "wrong parameter count for graph family");
        for (int p : spec.params)
            if (p <= 0) fail(ErrorKind::InvalidSpec, "graph family parameters must be positive");
    };
    switch (spec.kind) {
        case GraphFamilySpec::Kind::Complete: need(1); return complete_graph(spec.params[0]);
        case GraphFamilySpec::Kind::Biclique: need(2); return biclique(spec.params[0], spec.params[1]);
        case GraphFamilySpec::Kind::Cycle: need(1); return cycle_graph(spec.params[0]);
        case GraphFamilySpec::Kind::Path: need(1); return path_graph(spec.params[0]);
        case GraphFamilySpec::Kind::Star: need(1); return star_graph(spec.params[0]);
        case GraphFamilySpec::Kind::Empty: need(1); return empty_graph(spec.params[0]);
        case GraphFamilySpec::Kind::Petersen:
            if (!spec.params.empty()) fail(ErrorKind::InvalidSpec, "petersen takes no parameters");
            return petersen_graph();
        case GraphFamilySpec::Kind::EdgeList:
            if (spec.params.size() != 1 || spec.params[0] < 0) fail(ErrorKind::InvalidSpec, "edge list needs n");
            return Graph(spec.params[0], spec.edges);
    }
    fail(ErrorKind::InvalidSpec, "unknown graph family");
}

Graph complete_graph(int n) {
    if (n <= 0) fail(ErrorKind::InvalidSpec, "K_n needs n >= 1");
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, e);
}

Graph biclique(int a, int b) {
    if (a <= 0 || b <= 0) fail(ErrorKind::InvalidSpec, "biclique parts must be nonempty");
    std::vector<Edge> e;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) e.emplace_back(u, a + v);
    return Graph(a + b, e);
}

Graph cycle_graph(int n) {
    if (n < 3) fail(ErrorKind::InvalidSpec, "C_n needs n >= 3");
    std::vector<Edge> e;
    for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
    return Graph(n, e);
}

Graph path_graph(int n) {
    if (n <= 0) fail(ErrorKind::InvalidSpec, "P_n needs n >= 1");
    std::vector<Edge> e;
    for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return Graph(n, e);
}

Graph star_graph(int leaves) {
    if (leaves <= 0) fail(ErrorKind::InvalidSpec, "star needs at least one leaf");
    return biclique(1, leaves);
}

Graph empty_graph(int n) {
    if (n <= 0) fail(ErrorKind::InvalidSpec, "edgeless graph needs n >= 1");
    return Graph(n);
}

Graph petersen_graph() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
        e.emplace_back(i, i + 5);
    }
    return Graph(10, e);
}

Graph tensor_with_k2(const Graph& g) {
    const int n = g.vertex_count();
    if (2 * n > kMaxGraphVertices) fail(ErrorKind::LimitExceeded, "G x K2 would exceed 64 vertices");
    std::vector<Edge> e;
    for (auto [u, v] : g.edges()) {
        e.emplace_back(u, v + n);
        e.emplace_back(v, u + n);
    }
    return Graph(2 * n, e);
}

Graph add_apexes(const Graph& g, int count) {
    if (count != 1 && count != 2) fail(ErrorKind::InvalidArgument, "apex count must be 1 or 2");
    const int n = g.vertex_count();
    std::vector<Edge> e = g.edges();
    for (int a = 0; a < count; ++a)
        for (int v = 0; v < n; ++v) e.emplace_back(v, n + a);
    return Graph(n + count, e);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    const int n = a.vertex_count();
    std::vector<Edge> e = a.edges();
    for (auto [u, v] : b.edges()) e.emplace_back(u + n, v + n);
    return Graph(n + b.vertex_count(), e);
}

std::uint64_t triangle_count(const Graph& g) {
    std::uint64_t count = 0;
    for (auto [u, v] : g.edges()) {
        // third vertex above v so each triangle is seen once
        std::uint64_t common = g.neighbors(u) & g.neighbors(v);
        common &= ~((bit(v) << 1) - 1);
        count += static_cast<std::uint64_t>(std::popcount(common));
    }
    return count;
}

GraphStats graph_stats(const Graph& g) {
    GraphStats s;
    for (int v = 0; v < g.vertex_count(); ++v) {
        s.degrees.push_back(g.degree(v));
        s.max_degree = std::max(s.max_degree, s.degrees.back());
        if (s.degrees.back() == 0) s.has_isolated = true;
    }
    s.triangle_free = triangle_count(g) == 0;
    return s;
}

bool is_bipartite(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> side(static_cast<std::size_t>(n), -1);
    for (int s = 0; s < n; ++s) {
        if (side[static_cast<std::size_t>(s)] != -1) continue;
        side[static_cast<std::size_t>(s)] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (std::uint64_t m = g.neighbors(u); m; m &= m - 1) {
                int w = std::countr_zero(m);
                if (side[static_cast<std::size_t>(w)] == -1) {
                    side[static_cast<std::size_t>(w)] = 1 - side[static_cast<std::size_t>(u)];
                    stack.push_back(w);
                } else if (side[static_cast<std::size_t>(w)] == side[static_cast<std::size_t>(u)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) return true;
    std::uint64_t seen = 1;
    std::uint64_t frontier = 1;
    while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t m = frontier; m; m &= m - 1) next |= g.neighbors(std::countr_zero(m));
        frontier = next & ~seen;
        seen |= next;
    }
    return std::popcount(seen) == n;
}

// Text formats ---------------------------------------------------------------

Graph parse_edge_list(std::string_view text) {
    std::vector<long> numbers;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            std::size_t pos = 0;
            long value = 0;
            try {
                value = std::stol(tok, &pos);
            } catch (const std::exception&) {
                fail(ErrorKind::ParseError, "non-integer token '" + tok + "' in edge list");
            }
            if (pos != tok.size()) fail(ErrorKind::ParseError, "non-integer token '" + tok + "' in edge list");
            numbers.push_back(value);
        }
    }
    if (numbers.size() < 2) fail(ErrorKind::ParseError, "edge list needs an 'n m' header");
    long n = numbers[0];
    long m = numbers[1];
    if (n < 0 || n > kMaxGraphVertices || m < 0)
        fail(ErrorKind::ParseError, "bad edge list header");
    if (numbers.size() != static_cast<std::size_t>(2 + 2 * m))
        fail(ErrorKind::ParseError, "edge list has " + std::to_string((numbers.size() - 2) / 2) +
                                        " edges but the header says " + std::to_string(m));
    std::vector<Edge> edges;
    for (long i = 0; i < m; ++i)
        edges.emplace_back(static_cast<int>(numbers[static_cast<std::size_t>(2 + 2 * i)]),
                           static_cast<int>(numbers[static_cast<std::size_t>(3 + 2 * i)]));
    return Graph(static_cast<int>(n), edges);
}

std::string format_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

Graph parse_graph6(std::string_view text) {
    text = trim(text);
    if (text.substr(0, 10) == ">>graph6<<") text.remove_prefix(10);
    std::size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= text.size()) fail(ErrorKind::ParseError, "truncated graph6 string");
        int c = static_cast<unsigned char>(text[pos++]);
        if (c < 63 || c > 126) fail(ErrorKind::ParseError, "invalid graph6 character");
        return c - 63;
    };
    int n = next();
    if (n == 63) {
        n = 0;
        for (int i = 0; i < 3; ++i) n = (n << 6) | next();
        if (n > kMaxGraphVertices) fail(ErrorKind::LimitExceeded, "graph6 graph has more than 64 vertices");
    }
    std::vector<Edge> edges;
    int chunk = 0;
    int left = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (left == 0) {
                chunk = next();
                left = 6;
            }
            --left;
            if ((chunk >> left) & 1) edges.emplace_back(i, j);
        }
    }
    if (pos != text.size()) fail(ErrorKind::ParseError, "trailing characters in graph6 string");
    return Graph(n, edges);
}

std::string to_graph6(const Graph& g) {
    const int n = g.vertex_count();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back(static_cast<char>(126));
        for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
    int chunk = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            chunk = (chunk << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(chunk + 63));
                chunk = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>((chunk << (6 - filled)) + 63));
    return out;
}

GraphFamilySpec parse_graph_name(std::string_view name) {
    name = trim(name);
    GraphFamilySpec spec;
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "petersen") {
        spec.kind = GraphFamilySpec::Kind::Petersen;
        return spec;
    }
    if (name.size() < 2) fail(ErrorKind::ParseError, "unknown graph name '" + std::string(name) + "'");
    std::string_view rest = name.substr(1);
    switch (name[0]) {
        case 'K': {
            auto comma = rest.find(',');
            if (comma == std::string_view::npos) {
                spec.kind = GraphFamilySpec::Kind::Complete;
                spec.params = {parse_positive(rest, name)};
            } else {
                spec.kind = GraphFamilySpec::Kind::Biclique;
                spec.params = {parse_positive(rest.substr(0, comma), name), parse_positive(rest.substr(comma + 1), name)};
            }
            break;
        }
        case 'C': spec.kind = GraphFamilySpec::Kind::Cycle; spec.params = {parse_positive(rest, name)}; break;
        case 'P': spec.kind = GraphFamilySpec::Kind::Path; spec.params = {parse_positive(rest, name)}; break;
        case 'S': spec.kind = GraphFamilySpec::Kind::Star; spec.params = {parse_positive(rest, name)}; break;
        case 'E': spec.kind = GraphFamilySpec::Kind::Empty; spec.params = {parse_positive(rest, name)}; break;
        default: fail(ErrorKind::ParseError, "unknown graph name '" + std::string(name) + "'");
    }
    return spec;
}

Graph load_graph(std::string_view spec) {
    spec = trim(spec);
    if (spec.substr(0, 3) == "g6:") return parse_graph6(spec.substr(3));
    try {
        return build_named(parse_graph_name(spec));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ParseError) throw;
    }
    std::ifstream in{std::string(spec)};
    if (!in) fail(ErrorKind::IoError, "not a graph name and cannot open file '" + std::string(spec) + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string path(spec);
    if (path.size() > 3 && path.substr(path.size() - 3) == ".g6") {
        std::string first;
        std::getline(buffer, first);
        return parse_graph6(first);
    }
    return parse_edge_list(buffer.str());
}

}  // namespace homlab
