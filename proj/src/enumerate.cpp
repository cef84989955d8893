#include "siq/enumerate.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>

namespace siq {

bool is_multilinear(const Quiver& q, const PathWord& w) {
    if (w.empty()) return false;
    if (path_kind(q, w) != PathKind::closed_path) return false;
    std::set<std::pair<std::string, bool>> seen;
    for (const auto& r : w.letters)
        if (!seen.insert({r.base, r.starred}).second) return false;
    return true;
}

bool is_tree_path(const Quiver& q, const PathWord& w) {
    if (!is_multilinear(q, w)) return false;
    const int n = int(w.letters.size());
    std::vector<std::string> V(n);
    for (int i = 0; i < n; ++i) V[i] = ref_head(q, w.letters[i]);
    // bases occurring both plain and starred
    std::map<std::string, int> plain_at, star_at;
    for (int i = 0; i < n; ++i) {
        if (w.letters[i].starred) star_at[w.letters[i].base] = i;
        else plain_at[w.letters[i].base] = i;
    }
    for (const auto& [base, i1] : plain_at) {
        auto it = star_at.find(base);
        if (it == star_at.end()) continue;
        int p1 = std::min(i1, it->second), p2 = std::max(i1, it->second);
        if (p2 == p1 + 1) return false;               // inner side empty
        if (p1 == 0 && p2 == n - 1) return false;     // outer side empty
        std::set<std::string> inner, outer;
        for (int i = p1 + 1; i <= p2; ++i) inner.insert(V[i]);
        for (int i = p2 + 1; i < n; ++i) outer.insert(V[i]);
        for (int i = 0; i <= p1; ++i) outer.insert(V[i]);
        for (const auto& v : inner)
            if (outer.count(v)) return false;
    }
    return true;
}

namespace {

// compact letter table for the doubled quiver; letter 2r is arrow rank r
// plain, letter 2r+1 its star
struct LetterTable {
    std::vector<ArrowRef> refs;
    std::vector<int> head, tail;
    std::vector<std::string> vnames;
    int nletters = 0;

    explicit LetterTable(const Quiver& q) {
        std::map<std::string, int> vid;
        for (const auto& a : q.arrows) {
            vid.emplace(a.head, 0);
            vid.emplace(a.tail, 0);
        }
        for (auto& [name, id] : vid) {
            id = int(vnames.size());
            vnames.push_back(name);
        }
        for (int idx : q.arrows_by_name()) {
            const Arrow& a = q.arrows[idx];
            refs.push_back({a.name, false});
            head.push_back(vid[a.head]);
            tail.push_back(vid[a.tail]);
            refs.push_back({a.name, true});
            head.push_back(vid[a.tail]);
            tail.push_back(vid[a.head]);
        }
        nletters = int(refs.size());
    }

    PathWord word(const std::vector<int>& seq) const {
        PathWord w;
        w.letters.reserve(seq.size());
        for (int l : seq) w.letters.push_back(refs[l]);
        return w;
    }
};

void check_cap(const Quiver& q, const EnumOptions& opts) {
    if (int(q.arrows.size()) > opts.arrow_cap)
        throw input_error("quiver has " + std::to_string(q.arrows.size()) +
                          " arrows, enumeration cap is " + std::to_string(opts.arrow_cap));
}

// Depth-first walk over multilinear closed words whose first letter is their
// minimum and unstarred.  With prune_pairs, a branch dies as soon as a
// plain/star pair encloses an empty segment or one that shares a vertex with
// the rest of the walk so far; sealed vertices are never re-entered.
void multilinear_dfs(const LetterTable& lt, bool prune_pairs,
                     const std::function<void(const std::vector<int>&)>& emit) {
    const int L = lt.nletters;
    std::vector<int> seq, vseq;
    std::vector<int> pos(L, -1);
    uint32_t used = 0;

    std::function<void(int, uint64_t)> rec = [&](int cur, uint64_t forb) {
        if (cur == lt.head[seq[0]]) emit(seq);
        for (int l = seq[0] + 1; l < L; ++l) {
            if (used & (1u << l)) continue;
            if (lt.head[l] != cur) continue;
            const int t = lt.tail[l];
            uint64_t nforb = forb;
            if (prune_pairs) {
                if (nforb & (1ull << t)) continue;
                const int partner = l ^ 1;
                if (used & (1u << partner)) {
                    const int p1 = pos[partner];
                    const int k = int(seq.size());
                    if (k - 1 < p1 + 1) continue;  // empty inner segment
                    uint64_t inner = 1ull << cur;
                    for (int i = p1 + 1; i < k; ++i) inner |= 1ull << vseq[i];
                    uint64_t outside = 0;
                    for (int i = 0; i <= p1; ++i) outside |= 1ull << vseq[i];
                    if (inner & outside) continue;
                    nforb |= inner;
                }
            }
            pos[l] = int(seq.size());
            seq.push_back(l);
            vseq.push_back(lt.head[l]);
            used |= 1u << l;
            rec(t, nforb);
            used &= ~(1u << l);
            seq.pop_back();
            vseq.pop_back();
            pos[l] = -1;
        }
    };

    for (int s = 0; s < L; s += 2) {
        pos[s] = 0;
        seq = {s};
        vseq = {lt.head[s]};
        used = 1u << s;
        rec(lt.tail[s], 0);
        used = 0;
        seq.clear();
        vseq.clear();
        pos[s] = -1;
    }
}

}  // namespace

std::map<Multidegree, std::vector<PathWord>> enumerate_tree_path_classes(const Quiver& q,
                                                                         EnumOptions opts) {
    check_cap(q, opts);
    LetterTable lt(q);
    std::map<Multidegree, std::set<PathWord>> acc;
    multilinear_dfs(lt, true, [&](const std::vector<int>& seq) {
        PathWord w = lt.word(seq);
        if (!is_tree_path(q, w)) return;
        PathWord c = canonicalize(q, w);
        acc[mdeg(q, c)].insert(std::move(c));
    });
    std::map<Multidegree, std::vector<PathWord>> out;
    for (auto& [d, words] : acc) out.emplace(d, std::vector<PathWord>(words.begin(), words.end()));
    return out;
}

std::map<Multidegree, PathWord> enumerate_tree_paths(const Quiver& q, EnumOptions opts) {
    check_cap(q, opts);
    LetterTable lt(q);
    std::map<Multidegree, PathWord> best;
    multilinear_dfs(lt, true, [&](const std::vector<int>& seq) {
        PathWord w = lt.word(seq);
        if (!is_tree_path(q, w)) return;
        PathWord c = canonicalize(q, w);
        Multidegree d = mdeg(q, c);
        auto it = best.find(d);
        if (it == best.end()) best.emplace(std::move(d), std::move(c));
        else if (c < it->second) it->second = std::move(c);
    });
    return best;
}

std::map<Multidegree, PathWord> enumerate_admissible_tree_paths(const Quiver& q,
                                                                EnumOptions opts) {
    std::map<Multidegree, PathWord> out;
    for (const auto& [d, w] : enumerate_tree_paths(q, opts))
        if (path_admissible(q, w)) out.emplace(d, w);
    return out;
}

std::vector<PathWord> enumerate_multilinear_paths(const Quiver& q, EnumOptions opts) {
    check_cap(q, opts);
    LetterTable lt(q);
    std::set<PathWord> acc;
    multilinear_dfs(lt, false, [&](const std::vector<int>& seq) {
        acc.insert(canonicalize(q, lt.word(seq)));
    });
    return std::vector<PathWord>(acc.begin(), acc.end());
}

std::vector<PathWord> enumerate_closed_walks(const Quiver& q, int max_len) {
    LetterTable lt(q);
    const int L = lt.nletters;
    std::set<PathWord> acc;
    std::vector<int> seq;
    std::function<void(int)> rec = [&](int cur) {
        if (!seq.empty() && cur == lt.head[seq[0]]) acc.insert(canonicalize(q, lt.word(seq)));
        if (int(seq.size()) >= max_len) return;
        for (int l = 0; l < L; ++l) {
            if (!seq.empty() && lt.head[l] != cur) continue;
            if (seq.empty() && l % 2 == 1) continue;  // canonical class has an unstarred rep
            seq.push_back(l);
            rec(lt.tail[l]);
            seq.pop_back();
        }
    };
    rec(-1);
    return std::vector<PathWord>(acc.begin(), acc.end());
}

BlockDecomposition blocks_and_tree(const Quiver& q, const PathWord& w) {
    if (!is_tree_path(q, w)) throw input_error("not a tree path: " + format_path(w));
    const int n = int(w.letters.size());

    std::set<std::string> doubles;
    {
        std::set<std::string> plain, star;
        for (const auto& r : w.letters) (r.starred ? star : plain).insert(r.base);
        for (const auto& b : plain)
            if (star.count(b)) doubles.insert(b);
    }

    // union-find over visited vertices along non-double letters
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& v) {
        auto it = parent.find(v);
        if (it->second == v) return v;
        return it->second = find(it->second);
    };
    for (int i = 0; i < n; ++i) {
        const std::string& v = ref_head(q, w.letters[i]);
        parent.emplace(v, v);
    }
    for (const auto& r : w.letters) {
        if (doubles.count(r.base)) continue;
        std::string a = find(ref_head(q, r)), b = find(ref_tail(q, r));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    std::map<std::string, int> block_of_root;
    BlockDecomposition out;
    std::map<std::string, std::vector<std::string>> members;
    for (const auto& [v, p] : parent) members[find(v)].push_back(v);
    for (auto& [root, verts] : members) {
        block_of_root[root] = int(out.blocks.size());
        std::sort(verts.begin(), verts.end());
        out.blocks.push_back({verts, {}});
    }
    for (const auto& r : w.letters) {
        if (doubles.count(r.base)) continue;
        out.blocks[block_of_root[find(ref_head(q, r))]].arrows.push_back(r);
    }
    for (auto& b : out.blocks) std::sort(b.arrows.begin(), b.arrows.end());

    out.double_arrows.assign(doubles.begin(), doubles.end());
    for (const auto& x : out.double_arrows) {
        const Arrow& a = q.arrow(x);
        int hb = block_of_root[find(a.head)], tb = block_of_root[find(a.tail)];
        if (hb == tb) throw std::logic_error("double arrow endpoints fell in one block");
        out.tree.push_back({hb, tb, x});
    }

    // the block graph must be a tree
    if (out.blocks.size() != out.double_arrows.size() + 1)
        throw std::logic_error("block count does not match double arrow count");
    std::vector<int> broot(out.blocks.size());
    for (size_t i = 0; i < broot.size(); ++i) broot[i] = int(i);
    std::function<int(int)> bfind = [&](int v) {
        while (broot[v] != v) v = broot[v] = broot[broot[v]];
        return v;
    };
    for (const auto& e : out.tree) {
        int a = bfind(e.head_block), b = bfind(e.tail_block);
        if (a == b) throw std::logic_error("block graph has a cycle");
        broot[a] = b;
    }
    return out;
}

std::vector<Decomposition> enumerate_decompositions(const Quiver& q, const PathWord& w) {
    if (!is_multilinear(q, w))
        throw input_error("decompositions need a multilinear closed word, got: " + format_path(w));
    const int n = int(w.letters.size());

    // letter order for anchoring parts
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return w.letters[a] < w.letters[b]; });

    std::vector<bool> used(n, false);
    std::vector<std::vector<int>> parts;
    std::vector<Decomposition> out;

    std::function<void()> split = [&]() {
        int anchor = -1;
        for (int i : order)
            if (!used[i]) {
                anchor = i;
                break;
            }
        if (anchor < 0) {
            Decomposition dec;
            for (const auto& p : parts) {
                PathWord part;
                for (int i : p) part.letters.push_back(w.letters[i]);
                dec.parts.push_back(std::move(part));
            }
            out.push_back(std::move(dec));
            return;
        }
        const std::string start = ref_head(q, w.letters[anchor]);
        std::vector<int> path{anchor};
        std::set<std::string> visited{start};
        used[anchor] = true;
        std::function<void(const std::string&)> grow = [&](const std::string& cur) {
            if (cur == start) {
                parts.push_back(path);
                split();
                parts.pop_back();
                return;
            }
            if (visited.count(cur)) return;
            visited.insert(cur);
            for (int i = 0; i < n; ++i) {
                if (used[i] || ref_head(q, w.letters[i]) != cur) continue;
                used[i] = true;
                path.push_back(i);
                grow(ref_tail(q, w.letters[i]));
                path.pop_back();
                used[i] = false;
            }
            visited.erase(cur);
        };
        grow(ref_tail(q, w.letters[anchor]));
        used[anchor] = false;
    };
    split();
    return out;
}

static std::vector<std::set<std::string>> part_vertex_sets(const Quiver& q,
                                                           const Decomposition& dec) {
    std::vector<std::set<std::string>> vs;
    for (const auto& p : dec.parts) {
        std::set<std::string> s;
        for (const auto& r : p.letters) s.insert(ref_head(q, r));
        vs.push_back(std::move(s));
    }
    return vs;
}

Diagram type_diagram(const Quiver& q, const Decomposition& dec) {
    Diagram g;
    g.nodes = int(dec.parts.size());
    auto vs = part_vertex_sets(q, dec);
    for (int i = 0; i < g.nodes; ++i)
        for (int j = i + 1; j < g.nodes; ++j) {
            int common = 0;
            for (const auto& v : vs[i]) common += vs[j].count(v);
            if (common > 0) g.edges.push_back({i, j, common});
        }
    return g;
}

bool diagram_admissible(const Diagram& g) {
    for (const auto& e : g.edges)
        if (e.mark != 1 && e.mark != 2) return false;

    // biconnected components; each must be one edge or an all-ones triangle
    std::vector<std::vector<std::pair<int, int>>> adj(g.nodes);  // (neighbor, edge)
    for (size_t e = 0; e < g.edges.size(); ++e) {
        adj[g.edges[e].i].push_back({g.edges[e].j, int(e)});
        adj[g.edges[e].j].push_back({g.edges[e].i, int(e)});
    }
    std::vector<int> depth(g.nodes, -1), low(g.nodes, 0);
    std::vector<int> estack;
    bool ok = true;

    auto check_component = [&](const std::vector<int>& comp) {
        if (comp.size() == 1) return;
        if (comp.size() != 3) {
            ok = false;
            return;
        }
        std::set<int> nodes;
        for (int e : comp) {
            if (g.edges[e].mark != 1) ok = false;
            nodes.insert(g.edges[e].i);
            nodes.insert(g.edges[e].j);
        }
        if (nodes.size() != 3) ok = false;
    };

    std::function<void(int, int)> dfs = [&](int v, int pedge) {
        low[v] = depth[v];
        for (const auto& [u, e] : adj[v]) {
            if (e == pedge) continue;
            if (depth[u] < 0) {
                estack.push_back(e);
                depth[u] = depth[v] + 1;
                dfs(u, e);
                low[v] = std::min(low[v], low[u]);
                if (low[u] >= depth[v]) {
                    std::vector<int> comp;
                    while (true) {
                        int top = estack.back();
                        estack.pop_back();
                        comp.push_back(top);
                        if (top == e) break;
                    }
                    check_component(comp);
                }
            } else if (depth[u] < depth[v]) {
                estack.push_back(e);
                low[v] = std::min(low[v], depth[u]);
            }
        }
    };
    for (int v = 0; v < g.nodes; ++v)
        if (depth[v] < 0) {
            depth[v] = 0;
            dfs(v, -1);
        }
    return ok;
}

bool path_admissible(const Quiver& q, const PathWord& w, Decomposition* witness) {
    for (const auto& dec : enumerate_decompositions(q, w)) {
        Diagram g = type_diagram(q, dec);
        if (!diagram_admissible(g)) continue;
        auto vs = part_vertex_sets(q, dec);
        const int n = g.nodes;
        std::vector<std::vector<int>> mark(n, std::vector<int>(n, 0));
        for (const auto& e : g.edges) mark[e.i][e.j] = mark[e.j][e.i] = e.mark;

        auto common = [&](int i, int j) {
            std::set<std::string> c;
            for (const auto& v : vs[i])
                if (vs[j].count(v)) c.insert(v);
            return c;
        };

        // triangles of parts must meet in one shared vertex
        bool good = true;
        for (int i = 0; i < n && good; ++i)
            for (int j = i + 1; j < n && good; ++j)
                for (int k = j + 1; k < n && good; ++k) {
                    if (!mark[i][j] || !mark[i][k] || !mark[j][k]) continue;
                    auto cij = common(i, j), cik = common(i, k), cjk = common(j, k);
                    if (cij.size() != 1 || cij != cik || cij != cjk) good = false;
                }
        if (!good) continue;

        // two mark-2 edges at a middle part: one arc of the middle part
        // between the first intersection pair must avoid the third part
        for (int j = 0; j < n && good; ++j) {
            std::vector<int> twos;
            for (int i = 0; i < n; ++i)
                if (mark[j][i] == 2) twos.push_back(i);
            for (size_t a = 0; a < twos.size() && good; ++a)
                for (size_t b = a + 1; b < twos.size() && good; ++b) {
                    int i = twos[a], k = twos[b];
                    auto cut = common(i, j);
                    std::vector<std::string> cyc;
                    for (const auto& r : dec.parts[j].letters) cyc.push_back(ref_head(q, r));
                    int p1 = -1, p2 = -1;
                    for (size_t t = 0; t < cyc.size(); ++t)
                        if (cut.count(cyc[t])) {
                            if (p1 < 0) p1 = int(t);
                            else p2 = int(t);
                        }
                    auto arc_clear = [&](int from, int to) {  // inclusive, cyclic
                        for (int t = from;; t = (t + 1) % int(cyc.size())) {
                            if (vs[k].count(cyc[t])) return false;
                            if (t == to) break;
                        }
                        return true;
                    };
                    if (!arc_clear(p1, p2) && !arc_clear(p2, p1)) good = false;
                }
        }
        if (!good) continue;

        if (witness) *witness = dec;
        return true;
    }
    return false;
}

GeneratorSet minimal_generating_set(const Quiver& q, FieldSpec fs, EnumOptions opts) {
    GeneratorSet gs;
    gs.field = fs;
    for (int idx : q.arrows_by_name()) gs.dets.push_back(q.arrows[idx].name);
    gs.traces = fs.ch == 2 ? enumerate_tree_paths(q, opts) : enumerate_admissible_tree_paths(q, opts);
    return gs;
}

std::string format_generator_set(const Quiver& q, const GeneratorSet& gs) {
    struct Entry {
        int total;
        Multidegree d;
        std::string line;
    };
    std::vector<Entry> entries;
    for (const auto& a : gs.dets) {
        Multidegree d{{a, 2}};
        entries.push_back({2, d, "det " + a});
    }
    for (const auto& [d, w] : gs.traces)
        entries.push_back({total_degree(d), d, "tr " + format_path(w) + " | mdeg " + format_mdeg(d)});
    std::stable_sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
        if (a.total != b.total) return a.total < b.total;
        return mdeg_lex_less(q, b.d, a.d);
    });
    std::ostringstream out;
    for (const auto& e : entries) out << e.line << "\n";
    return out.str();
}

}  // namespace siq
