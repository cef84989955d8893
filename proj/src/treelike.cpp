#include "siq/treelike.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace siq {

HatGraph hat_graph(const Quiver& q) {
    HatGraph h;
    h.vertices = q.vertices;
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> between;
    for (const auto& a : q.arrows) {
        if (a.head == a.tail) h.loops[a.head].push_back(a.name);
        else {
            auto key = std::minmax(a.head, a.tail);
            between[{key.first, key.second}].push_back(a.name);
        }
    }
    for (auto& [v, names] : h.loops) std::sort(names.begin(), names.end());
    for (auto& [uv, names] : between) {
        std::sort(names.begin(), names.end());
        h.edges.push_back({uv.first, uv.second, names});
    }
    return h;
}

bool HatGraph::is_tree() const {
    if (edges.size() + 1 != vertices.size()) return false;
    std::map<std::string, std::string> parent;
    for (const auto& v : vertices) parent[v] = v;
    std::function<std::string(const std::string&)> find = [&](const std::string& v) {
        if (parent[v] == v) return v;
        return parent[v] = find(parent[v]);
    };
    for (const auto& e : edges) {
        std::string a = find(e.u), b = find(e.v);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

bool is_good_coloring(const Quiver& q, const HatGraph& h, const Coloring& c) {
    if (c.edge_arrows.size() != h.edges.size())
        throw input_error("coloring does not match the merged edge list");
    for (const auto& [v, loops] : c.vertex_loops) {
        auto it = h.loops.find(v);
        for (const auto& a : loops) {
            if (it == h.loops.end() ||
                std::find(it->second.begin(), it->second.end(), a) == it->second.end())
                throw input_error("coloring picks " + a + " which is not a loop at " + v);
        }
    }
    for (size_t i = 0; i < h.edges.size(); ++i)
        for (const auto& a : c.edge_arrows[i])
            if (std::find(h.edges[i].arrows.begin(), h.edges[i].arrows.end(), a) ==
                h.edges[i].arrows.end())
                throw input_error("coloring picks " + a + " which does not join " + h.edges[i].u +
                                  " and " + h.edges[i].v);

    for (const auto& s : c.edge_arrows)
        if (s.size() != 1 && s.size() % 2 != 0) return false;

    // support: vertices carrying loops or touching a colored edge
    std::set<std::string> support;
    for (const auto& [v, loops] : c.vertex_loops)
        if (!loops.empty()) support.insert(v);
    std::map<std::string, int> degree;
    for (size_t i = 0; i < h.edges.size(); ++i) {
        if (c.edge_arrows[i].empty()) continue;
        support.insert(h.edges[i].u);
        support.insert(h.edges[i].v);
        ++degree[h.edges[i].u];
        ++degree[h.edges[i].v];
    }
    if (support.empty()) return false;

    std::map<std::string, std::string> parent;
    for (const auto& v : support) parent[v] = v;
    std::function<std::string(const std::string&)> find = [&](const std::string& v) {
        if (parent[v] == v) return v;
        return parent[v] = find(parent[v]);
    };
    for (size_t i = 0; i < h.edges.size(); ++i) {
        if (c.edge_arrows[i].empty()) continue;
        std::string a = find(h.edges[i].u), b = find(h.edges[i].v);
        if (a != b) parent[a] = b;
    }
    const std::string root = find(*support.begin());
    for (const auto& v : support)
        if (find(v) != root) return false;

    // a support leaf on a single-arrow edge must carry a loop
    for (size_t i = 0; i < h.edges.size(); ++i) {
        if (c.edge_arrows[i].size() != 1) continue;
        for (const std::string& w : {h.edges[i].u, h.edges[i].v}) {
            if (degree[w] == 1) {
                auto it = c.vertex_loops.find(w);
                if (it == c.vertex_loops.end() || it->second.empty()) return false;
            }
        }
    }
    return true;
}

PathWord coloring_word(const Quiver& q, const HatGraph& h, const Coloring& c) {
    if (!is_good_coloring(q, h, c)) throw input_error("coloring is not good");

    struct Step {
        std::string from, to;
        ArrowRef ref;
    };
    std::vector<Step> steps;
    for (const auto& [v, loops] : c.vertex_loops) {
        std::vector<std::string> sorted(loops.begin(), loops.end());
        std::sort(sorted.begin(), sorted.end());
        for (const auto& a : sorted) steps.push_back({v, v, {a, false}});
    }
    for (size_t i = 0; i < h.edges.size(); ++i) {
        const auto& s = c.edge_arrows[i];
        if (s.empty()) continue;
        if (s.size() == 1) {
            const Arrow& a = q.arrow(*s.begin());
            steps.push_back({a.head, a.tail, {a.name, false}});
            steps.push_back({a.tail, a.head, {a.name, true}});
        } else {
            // even: half the arrows cross one way, half the other
            int quota_uv = int(s.size()) / 2, quota_vu = int(s.size()) / 2;
            for (const auto& name : s) {  // set iterates in sorted order
                const Arrow& a = q.arrow(name);
                const bool head_is_u = a.head == h.edges[i].u;
                int& along = head_is_u ? quota_uv : quota_vu;  // unstarred steps head -> tail
                int& against = head_is_u ? quota_vu : quota_uv;
                if (along > 0) {
                    steps.push_back({a.head, a.tail, {name, false}});
                    --along;
                } else {
                    steps.push_back({a.tail, a.head, {name, true}});
                    --against;
                }
            }
        }
    }

    // Hierholzer circuit over the steps
    std::map<std::string, std::vector<size_t>> out_steps;
    for (size_t i = 0; i < steps.size(); ++i) out_steps[steps[i].from].push_back(i);
    for (auto& [v, list] : out_steps)
        std::sort(list.begin(), list.end(),
                  [&](size_t a, size_t b) { return steps[a].ref < steps[b].ref; });
    std::map<std::string, size_t> cursor;
    std::vector<size_t> circuit;
    std::function<void(const std::string&)> euler = [&](const std::string& v) {
        auto& list = out_steps[v];
        while (cursor[v] < list.size()) {
            size_t s = list[cursor[v]++];
            euler(steps[s].to);
            circuit.push_back(s);
        }
    };
    euler(out_steps.begin()->first);
    if (circuit.size() != steps.size())
        throw std::logic_error("coloring support was not connected");
    std::reverse(circuit.begin(), circuit.end());

    PathWord w;
    for (size_t s : circuit) w.letters.push_back(steps[s].ref);
    if (!is_tree_path(q, w))
        throw std::logic_error("coloring word failed the tree path check: " + format_path(w));
    return w;
}

std::vector<Coloring> good_colorings(const Quiver& q, const HatGraph& h, FieldSpec fs) {
    if (!h.is_tree()) throw input_error("quiver is not tree-like");
    if (q.arrows.size() > 14)
        throw input_error("quiver has " + std::to_string(q.arrows.size()) +
                          " arrows, coloring cap is 14");

    std::vector<std::pair<std::string, std::vector<std::string>>> loop_groups(h.loops.begin(),
                                                                              h.loops.end());
    std::vector<Coloring> out;
    Coloring cur;
    cur.edge_arrows.assign(h.edges.size(), {});

    std::function<void(size_t)> pick_edges = [&](size_t i) {
        if (i == h.edges.size()) {
            if (!is_good_coloring(q, h, cur)) return;
            if (fs.ch != 2) {
                // lone size-four edge, or sizes <= 2 with per-vertex budget 3
                bool lone_four = false;
                {
                    size_t four_at = h.edges.size();
                    bool rest_empty = true;
                    for (const auto& [v, loops] : cur.vertex_loops)
                        if (!loops.empty()) rest_empty = false;
                    for (size_t e = 0; e < h.edges.size(); ++e) {
                        if (cur.edge_arrows[e].size() == 4 && four_at == h.edges.size())
                            four_at = e;
                        else if (!cur.edge_arrows[e].empty())
                            rest_empty = false;
                    }
                    lone_four = four_at != h.edges.size() && rest_empty;
                }
                if (!lone_four) {
                    for (const auto& s : cur.edge_arrows)
                        if (s.size() > 2) return;
                    std::map<std::string, int> budget;
                    for (const auto& [v, loops] : cur.vertex_loops) budget[v] += int(loops.size());
                    for (size_t e = 0; e < h.edges.size(); ++e)
                        if (!cur.edge_arrows[e].empty()) {
                            ++budget[h.edges[e].u];
                            ++budget[h.edges[e].v];
                        }
                    for (const auto& [v, b] : budget)
                        if (b > 3) return;
                }
            }
            out.push_back(cur);
            return;
        }
        const auto& arrows = h.edges[i].arrows;
        const size_t n = arrows.size();
        for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
            std::set<std::string> s;
            for (size_t b = 0; b < n; ++b)
                if (mask & (size_t(1) << b)) s.insert(arrows[b]);
            cur.edge_arrows[i] = std::move(s);
            pick_edges(i + 1);
        }
        cur.edge_arrows[i].clear();
    };

    std::function<void(size_t)> pick_loops = [&](size_t g) {
        if (g == loop_groups.size()) {
            pick_edges(0);
            return;
        }
        const auto& [v, loops] = loop_groups[g];
        const size_t n = loops.size();
        for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
            std::set<std::string> s;
            for (size_t b = 0; b < n; ++b)
                if (mask & (size_t(1) << b)) s.insert(loops[b]);
            if (s.empty()) cur.vertex_loops.erase(v);
            else cur.vertex_loops[v] = std::move(s);
            pick_loops(g + 1);
        }
        cur.vertex_loops.erase(v);
    };

    pick_loops(0);
    return out;
}

GeneratorSet treelike_generating_set(const Quiver& q, FieldSpec fs) {
    HatGraph h = hat_graph(q);
    GeneratorSet gs;
    gs.field = fs;
    for (int idx : q.arrows_by_name()) gs.dets.push_back(q.arrows[idx].name);
    for (const auto& c : good_colorings(q, h, fs)) {
        PathWord w = canonicalize(q, coloring_word(q, h, c));
        Multidegree d = mdeg(q, w);
        if (!gs.traces.emplace(d, w).second)
            throw std::logic_error("two colorings share the multidegree " + format_mdeg(d));
    }
    return gs;
}

Quiver two_vertex_quiver(int p, int q, int l) {
    if (p < 0 || q < 0 || l < 0 || p + q + l == 0)
        throw input_error("need non-negative loop/arrow counts with at least one arrow");
    std::vector<Arrow> arrows;
    for (int i = 1; i <= p; ++i) arrows.push_back({"x" + std::to_string(i), "u", "u"});
    for (int i = 1; i <= q; ++i) arrows.push_back({"y" + std::to_string(i), "v", "v"});
    for (int i = 1; i <= l; ++i) arrows.push_back({"z" + std::to_string(i), "u", "v"});
    return validate_quiver(l > 0 || (p > 0 && q > 0) ? std::vector<std::string>{"u", "v"}
                           : p > 0                   ? std::vector<std::string>{"u"}
                                                     : std::vector<std::string>{"v"},
                           arrows);
}

namespace {

void subsets_of(int n, int max_size, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        fn(cur);
        if (int(cur.size()) == max_size) return;
        for (int i = from; i <= n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(1);
}

}  // namespace

GeneratorSet two_vertex_generating_set(int p, int q, int l, FieldSpec fs) {
    Quiver quiver = two_vertex_quiver(p, q, l);
    if (p + q + l > 24) throw input_error("two-vertex generating set capped at 24 arrows");
    GeneratorSet gs;
    gs.field = fs;
    for (int idx : quiver.arrows_by_name()) gs.dets.push_back(quiver.arrows[idx].name);
    const bool not2 = fs.ch != 2;

    auto add = [&](const PathWord& w) {
        Multidegree d = mdeg(quiver, w);
        if (!gs.traces.emplace(d, canonicalize(quiver, w)).second)
            throw std::logic_error("two-vertex families collided at " + format_mdeg(d));
    };
    auto letters = [](const char* base, const std::vector<int>& ids, bool starred = false) {
        std::vector<ArrowRef> out;
        for (int i : ids) out.push_back({base + std::to_string(i), starred});
        return out;
    };

    // loop families at each vertex
    subsets_of(p, not2 ? 3 : p, [&](const std::vector<int>& sx) {
        if (sx.empty()) return;
        add(PathWord{letters("x", sx), ""});
    });
    subsets_of(q, not2 ? 3 : q, [&](const std::vector<int>& sy) {
        if (sy.empty()) return;
        add(PathWord{letters("y", sy), ""});
    });

    // one connecting arrow out and back with loops on both sides
    subsets_of(p, not2 ? 2 : p, [&](const std::vector<int>& sx) {
        if (sx.empty()) return;
        subsets_of(q, not2 ? 2 : q, [&](const std::vector<int>& sy) {
            if (sy.empty()) return;
            for (int k = 1; k <= l; ++k) {
                PathWord w{letters("x", sx), ""};
                w.letters.push_back({"z" + std::to_string(k), false});
                for (const auto& r : letters("y", sy)) w.letters.push_back(r);
                w.letters.push_back({"z" + std::to_string(k), true});
                add(w);
            }
        });
    });

    // alternating runs over an even set of connecting arrows
    std::vector<int> ks;
    std::function<void(int, int)> pick_ks = [&](int from, int want) {
        if (want == 0) {
            const int t = int(ks.size()) / 2;
            int max_side = not2 ? (t == 1 ? 2 : 0) : std::max(p, q);
            subsets_of(p, std::min(max_side, p), [&](const std::vector<int>& sx) {
                subsets_of(q, std::min(max_side, q), [&](const std::vector<int>& sy) {
                    PathWord w{letters("x", sx), ""};
                    for (size_t i = 0; i < ks.size(); ++i) {
                        w.letters.push_back({"z" + std::to_string(ks[i]), i % 2 == 1});
                        if (i == 0)
                            for (const auto& r : letters("y", sy)) w.letters.push_back(r);
                    }
                    add(w);
                });
            });
            return;
        }
        for (int i = from; i <= l; ++i) {
            ks.push_back(i);
            pick_ks(i + 1, want - 1);
            ks.pop_back();
        }
    };
    for (int t = 1; 2 * t <= l; ++t) {
        if (not2 && t > 2) break;
        pick_ks(1, 2 * t);
    }
    return gs;
}

namespace {

unsigned long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (unsigned long long)(n - k + i) / i;
    return r;
}

}  // namespace

unsigned long long two_vertex_count(int p, int q, int l, FieldSpec fs) {
    if (p < 0 || q < 0 || l < 0 || p + q + l == 0)
        throw input_error("need non-negative loop/arrow counts with at least one arrow");
    if (p > 62 || q > 62 || l > 62) throw input_error("two-vertex count capped at 62 per slot");
    unsigned long long dets = (unsigned long long)(p + q + l);
    if (fs.ch == 2) {
        unsigned long long xs = (1ull << p) - 1, ys = (1ull << q) - 1;
        unsigned long long evens = 0;
        for (int t = 1; 2 * t <= l; ++t) evens += binom(l, 2 * t);
        return xs + ys + (unsigned long long)l * xs * ys + evens * (1ull << p) * (1ull << q) + dets;
    }
    auto s = [&](int n, int cap) {
        unsigned long long r = 0;
        for (int i = 1; i <= cap; ++i) r += binom(n, i);
        return r;
    };
    unsigned long long a = s(p, 3), b = s(q, 3);
    unsigned long long c = (unsigned long long)l * s(p, 2) * s(q, 2);
    unsigned long long d1 = binom(l, 2) * (1 + s(p, 2)) * (1 + s(q, 2));
    unsigned long long d2 = binom(l, 4);
    return a + b + c + d1 + d2 + dets;
}

}  // namespace siq
