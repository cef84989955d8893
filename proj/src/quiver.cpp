#include "siq/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace siq {

int Quiver::vertex_id(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return int(i);
    return -1;
}

int Quiver::arrow_id(const std::string& name) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return int(i);
    return -1;
}

const Arrow& Quiver::arrow(const std::string& name) const {
    int id = arrow_id(name);
    if (id < 0) throw input_error("unknown arrow: " + name);
    return arrows[id];
}

bool Quiver::has_loops_or_parallel() const {
    for (const auto& a : arrows)
        if (a.head == a.tail) return true;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& a : arrows) {
        auto key = std::minmax(a.head, a.tail);
        if (!seen.insert({key.first, key.second}).second) return true;
    }
    return false;
}

std::vector<int> Quiver::arrows_by_name() const {
    std::vector<int> idx(arrows.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return arrows[a].name < arrows[b].name;
    });
    return idx;
}

Quiver validate_quiver(const std::vector<std::string>& vertices,
                       const std::vector<Arrow>& arrows) {
    Quiver q{vertices, arrows};
    std::set<std::string> vnames;
    for (const auto& v : q.vertices) {
        if (v.empty()) throw input_error("empty vertex name");
        if (!vnames.insert(v).second) throw input_error("duplicate vertex: " + v);
    }
    std::set<std::string> anames;
    for (const auto& a : q.arrows) {
        if (a.name.empty()) throw input_error("empty arrow name");
        if (a.name.find('*') != std::string::npos)
            throw input_error("arrow name may not contain '*': " + a.name);
        if (!anames.insert(a.name).second) throw input_error("duplicate arrow: " + a.name);
        if (!vnames.count(a.head))
            throw input_error("arrow " + a.name + ": unknown head vertex " + a.head);
        if (!vnames.count(a.tail))
            throw input_error("arrow " + a.name + ": unknown tail vertex " + a.tail);
    }
    return q;
}

Quiver parse_quiver(std::istream& in) {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "vertex") {
            std::string name, extra;
            if (!(ls >> name) || (ls >> extra))
                throw input_error("line " + std::to_string(lineno) + ": expected 'vertex <name>'");
            vertices.push_back(name);
        } else if (kw == "arrow") {
            std::string name, head, tail, extra;
            if (!(ls >> name >> head >> tail) || (ls >> extra))
                throw input_error("line " + std::to_string(lineno) +
                                  ": expected 'arrow <name> <head> <tail>'");
            arrows.push_back({name, head, tail});
        } else {
            throw input_error("line " + std::to_string(lineno) + ": unknown directive '" + kw + "'");
        }
    }
    return validate_quiver(vertices, arrows);
}

Quiver parse_quiver_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open quiver file: " + path);
    return parse_quiver(in);
}

std::string format_quiver(const Quiver& q) {
    std::ostringstream out;
    for (const auto& v : q.vertices) out << "vertex " << v << "\n";
    for (const auto& a : q.arrows) out << "arrow " << a.name << " " << a.head << " " << a.tail << "\n";
    return out.str();
}

const std::string& ref_head(const Quiver& q, const ArrowRef& r) {
    const Arrow& a = q.arrow(r.base);
    return r.starred ? a.tail : a.head;
}

const std::string& ref_tail(const Quiver& q, const ArrowRef& r) {
    const Arrow& a = q.arrow(r.base);
    return r.starred ? a.head : a.tail;
}

PathWord parse_path(const std::string& text) {
    PathWord w;
    std::istringstream in(text);
    std::string tok;
    std::vector<std::string> toks;
    while (in >> tok) toks.push_back(tok);
    if (toks.size() == 1 && toks[0].rfind("1@", 0) == 0) {
        w.basepoint = toks[0].substr(2);
        if (w.basepoint.empty()) throw input_error("empty path needs a basepoint: '1@<vertex>'");
        return w;
    }
    if (toks.empty()) throw input_error("empty path word; write '1@<vertex>' for an empty path");
    for (auto& t : toks) {
        const std::string orig = t;
        ArrowRef r;
        if (t.size() > 1 && t.back() == '*') {
            r.starred = true;
            t.pop_back();
        }
        if (t.empty() || t.find('*') != std::string::npos)
            throw input_error("bad path letter: '" + orig + "'");
        r.base = t;
        w.letters.push_back(std::move(r));
    }
    return w;
}

std::string format_path(const PathWord& w) {
    if (w.empty()) return "1@" + w.basepoint;
    std::string out;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) out += ' ';
        out += w.letters[i].base;
        if (w.letters[i].starred) out += '*';
    }
    return out;
}

PathKind path_kind(const Quiver& q, const PathWord& w) {
    if (w.empty()) {
        if (q.vertex_id(w.basepoint) < 0)
            throw input_error("unknown basepoint vertex: " + w.basepoint);
        return PathKind::empty_path;
    }
    for (const auto& r : w.letters)
        if (q.arrow_id(r.base) < 0) throw input_error("unknown arrow: " + r.base);
    for (size_t i = 0; i + 1 < w.letters.size(); ++i)
        if (ref_tail(q, w.letters[i]) != ref_head(q, w.letters[i + 1]))
            return PathKind::not_a_path;
    if (ref_head(q, w.letters.front()) == ref_tail(q, w.letters.back()))
        return PathKind::closed_path;
    return PathKind::open_path;
}

std::string word_head(const Quiver& q, const PathWord& w) {
    if (w.empty()) {
        if (q.vertex_id(w.basepoint) < 0)
            throw input_error("unknown basepoint vertex: " + w.basepoint);
        return w.basepoint;
    }
    return ref_head(q, w.letters.front());
}

std::string word_tail(const Quiver& q, const PathWord& w) {
    if (w.empty()) return word_head(q, w);
    return ref_tail(q, w.letters.back());
}

PathWord star_path(const PathWord& w) {
    PathWord out;
    out.basepoint = w.basepoint;
    out.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back({it->base, !it->starred});
    return out;
}

Multidegree mdeg(const Quiver& q, const PathWord& w) {
    Multidegree d;
    for (const auto& r : w.letters) {
        if (q.arrow_id(r.base) < 0) throw input_error("unknown arrow: " + r.base);
        ++d[r.base];
    }
    return d;
}

int total_degree(const Multidegree& d) {
    int t = 0;
    for (const auto& [a, c] : d) t += c;
    return t;
}

std::string format_mdeg(const Multidegree& d) {
    std::string out = "{";
    bool first = true;
    for (const auto& [a, c] : d) {
        if (!first) out += ',';
        first = false;
        out += a + ":" + std::to_string(c);
    }
    return out + "}";
}

bool mdeg_lex_less(const Quiver& q, const Multidegree& a, const Multidegree& b) {
    for (int idx : q.arrows_by_name()) {
        const std::string& name = q.arrows[idx].name;
        auto ia = a.find(name), ib = b.find(name);
        int ca = ia == a.end() ? 0 : ia->second;
        int cb = ib == b.end() ? 0 : ib->second;
        if (ca != cb) return ca < cb;
    }
    return false;
}

bool mdeg_leq(const Multidegree& a, const Multidegree& b) {
    for (const auto& [name, c] : a) {
        auto it = b.find(name);
        if (it == b.end() || it->second < c) return false;
    }
    return true;
}

Multidegree mdeg_sub(const Multidegree& a, const Multidegree& b) {
    Multidegree out = a;
    for (const auto& [name, c] : b) {
        auto it = out.find(name);
        if (it == out.end() || it->second < c)
            throw input_error("multidegree subtraction went negative at " + name);
        it->second -= c;
        if (it->second == 0) out.erase(it);
    }
    return out;
}

Multidegree mdeg_add(const Multidegree& a, const Multidegree& b) {
    Multidegree out = a;
    for (const auto& [name, c] : b) {
        out[name] += c;
        if (out[name] == 0) out.erase(name);
    }
    return out;
}

PathWord canonicalize(const Quiver& q, const PathWord& w) {
    if (w.empty()) throw input_error("cannot canonicalize an empty path");
    if (path_kind(q, w) != PathKind::closed_path)
        throw input_error("cannot canonicalize a non-closed word: " + format_path(w));
    const size_t n = w.letters.size();
    PathWord best;
    auto consider = [&](const PathWord& cand) {
        if (best.letters.empty() || cand.letters < best.letters) best = cand;
    };
    PathWord rot = w;
    for (size_t i = 0; i < n; ++i) {
        consider(rot);
        std::rotate(rot.letters.begin(), rot.letters.begin() + 1, rot.letters.end());
    }
    rot = star_path(w);
    for (size_t i = 0; i < n; ++i) {
        consider(rot);
        std::rotate(rot.letters.begin(), rot.letters.begin() + 1, rot.letters.end());
    }
    best.basepoint.clear();
    return best;
}

Quiver glue_vertices(const Quiver& q, const std::string& keep, const std::string& drop) {
    if (q.vertex_id(keep) < 0) throw input_error("unknown vertex: " + keep);
    if (q.vertex_id(drop) < 0) throw input_error("unknown vertex: " + drop);
    if (keep == drop) throw input_error("glue_vertices needs two distinct vertices");
    std::vector<std::string> verts;
    for (const auto& v : q.vertices)
        if (v != drop) verts.push_back(v);
    std::vector<Arrow> arrows = q.arrows;
    for (auto& a : arrows) {
        if (a.head == drop) a.head = keep;
        if (a.tail == drop) a.tail = keep;
    }
    return validate_quiver(verts, arrows);
}

Quiver flip_arrows(const Quiver& q, const std::set<std::string>& names) {
    for (const auto& n : names)
        if (q.arrow_id(n) < 0) throw input_error("unknown arrow: " + n);
    std::vector<Arrow> arrows = q.arrows;
    for (auto& a : arrows)
        if (names.count(a.name)) std::swap(a.head, a.tail);
    return validate_quiver(q.vertices, arrows);
}

}  // namespace siq
