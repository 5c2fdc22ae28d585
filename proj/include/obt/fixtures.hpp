#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "obt/errors.hpp"

namespace obt {

// Deterministic generators for the bundled category documents. `fs4` is far
// too large to write by hand (all functions between sets of sizes 0..4), so
// it is emitted by `genfixture`; `diamond` is emitted by the same code path
// for reviewability and also ships as a committed file.

namespace fixtures {

// Skeletal finite sets of sizes 0..4: objects "0".."4" with carrier elements
// a,b,c,d; one morphism per function, with the value table encoded in the id
// ("f12_a" is 1 -> 2, u |-> a; identities are "f00", "f11_a", "f22_ab", ...).
// All morphisms are confined and specialized, any fiber square is independent,
// and the pullback table declares every cospan whose fiber has at most 4
// elements. Weight labels are the functions into {1,3,5}, pulled back by
// precomposition. Coproducts are the disjoint unions of total size <= 4.
inline nlohmann::json make_fs4_document() {
    using nlohmann::json;
    constexpr int kMaxSize = 4;
    constexpr int kWeightValues[] = {1, 3, 5};

    struct Fn {
        int src, dst;
        std::vector<int> tab;  // tab[i] in [0, dst)
        std::string id;
    };

    auto tuple_suffix = [](const std::vector<int>& tab) {
        std::string s;
        for (int v : tab) s.push_back(static_cast<char>('a' + v));
        return s;
    };
    auto fn_id = [&](int m, int n, const std::vector<int>& tab) {
        std::string id = "f" + std::to_string(m) + std::to_string(n);
        if (m > 0) id += "_" + tuple_suffix(tab);
        return id;
    };

    std::vector<Fn> fns;
    std::map<std::string, int> fn_ix;
    for (int m = 0; m <= kMaxSize; ++m) {
        for (int n = 0; n <= kMaxSize; ++n) {
            if (n == 0 && m > 0) continue;  // no functions into the empty set
            std::vector<int> tab(m, 0);
            while (true) {
                Fn f{m, n, tab, fn_id(m, n, tab)};
                fn_ix[f.id] = static_cast<int>(fns.size());
                fns.push_back(f);
                // next tuple in lex order, leftmost significant
                int i = m - 1;
                while (i >= 0 && tab[i] == n - 1) tab[i--] = 0;
                if (i < 0) break;
                ++tab[i];
            }
        }
    }
    auto find_fn = [&](int m, int n, const std::vector<int>& tab) -> const std::string& {
        auto it = fn_ix.find(fn_id(m, n, tab));
        if (it == fn_ix.end()) throw Error("fs4 generator: missing function id");
        return fns[it->second].id;
    };

    json doc;
    doc["name"] = "fs4";
    doc["final_object"] = "1";
    doc["confined"] = "all";
    doc["specialized"] = "all";
    doc["squares"] = "all-fiber";

    json objects = json::array();
    json carriers_objects = json::object();
    for (int n = 0; n <= kMaxSize; ++n) {
        objects.push_back(json{{"id", std::to_string(n)}});
        json elems = json::array();
        for (int i = 0; i < n; ++i) elems.push_back(std::string(1, static_cast<char>('a' + i)));
        carriers_objects[std::to_string(n)] = elems;
    }
    doc["objects"] = objects;

    json morphisms = json::array();
    json identities = json::object();
    json maps = json::object();
    for (const Fn& f : fns) {
        morphisms.push_back(json{{"id", f.id},
                                 {"src", std::to_string(f.src)},
                                 {"dst", std::to_string(f.dst)}});
        json images = json::array();
        for (int v : f.tab) images.push_back(std::string(1, static_cast<char>('a' + v)));
        maps[f.id] = images;
        bool is_id = f.src == f.dst;
        for (int i = 0; i < f.src && is_id; ++i) is_id = f.tab[i] == i;
        if (is_id) identities[std::to_string(f.src)] = f.id;
    }
    doc["morphisms"] = morphisms;
    doc["identities"] = identities;
    doc["carriers"] = json{{"objects", carriers_objects}, {"maps", maps}};

    json compose = json::array();
    for (const Fn& f : fns) {
        for (const Fn& g : fns) {
            if (f.dst != g.src) continue;
            bool f_id = f.src == f.dst, g_id = g.src == g.dst;
            for (int i = 0; i < f.src && f_id; ++i) f_id = f.tab[i] == i;
            for (int i = 0; i < g.src && g_id; ++i) g_id = g.tab[i] == i;
            if (f_id || g_id) continue;  // identity compositions are implied
            std::vector<int> comp(f.src);
            for (int i = 0; i < f.src; ++i) comp[i] = g.tab[f.tab[i]];
            compose.push_back(json{{"first", f.id},
                                   {"then", g.id},
                                   {"equals", find_fn(f.src, g.dst, comp)}});
        }
    }
    doc["compose"] = compose;

    json pullbacks = json::array();
    for (std::size_t li = 0; li < fns.size(); ++li) {
        for (std::size_t ri = li; ri < fns.size(); ++ri) {
            const Fn& l = fns[li];
            const Fn& r = fns[ri];
            if (l.dst != r.dst) continue;
            std::vector<std::pair<int, int>> fiber;
            for (int x = 0; x < l.src; ++x)
                for (int y = 0; y < r.src; ++y)
                    if (l.tab[x] == r.tab[y]) fiber.emplace_back(x, y);
            if (static_cast<int>(fiber.size()) > kMaxSize) continue;
            int a = static_cast<int>(fiber.size());
            std::vector<int> pl(a), pr(a);
            for (int i = 0; i < a; ++i) {
                pl[i] = fiber[i].first;
                pr[i] = fiber[i].second;
            }
            pullbacks.push_back(json{{"left", l.id},
                                     {"right", r.id},
                                     {"apex", std::to_string(a)},
                                     {"proj_left", find_fn(a, l.src, pl)},
                                     {"proj_right", find_fn(a, r.src, pr)}});
        }
    }
    doc["pullbacks"] = pullbacks;

    json coproducts = json::array();
    for (int m = 0; m <= kMaxSize; ++m) {
        for (int n = 0; m + n <= kMaxSize; ++n) {
            std::vector<int> il(m), ir(n);
            for (int i = 0; i < m; ++i) il[i] = i;
            for (int i = 0; i < n; ++i) ir[i] = m + i;
            coproducts.push_back(json{{"left", std::to_string(m)},
                                      {"right", std::to_string(n)},
                                      {"object", std::to_string(m + n)},
                                      {"inj_left", find_fn(m, m + n, il)},
                                      {"inj_right", find_fn(n, m + n, ir)}});
        }
    }
    doc["coproducts"] = coproducts;

    // Weight labels: all functions carrier -> {1,3,5}, token "w<v1>_<v2>...".
    auto weight_token = [&](const std::vector<int>& vals) {
        std::string t = "w";
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) t += "_";
            t += std::to_string(vals[i]);
        }
        return t;
    };
    auto weights_over = [&](int n) {
        std::vector<std::vector<int>> out;
        std::vector<int> cur(n, 0);
        while (true) {
            std::vector<int> vals(n);
            for (int i = 0; i < n; ++i) vals[i] = kWeightValues[cur[i]];
            out.push_back(vals);
            int i = n - 1;
            while (i >= 0 && cur[i] == 2) cur[i--] = 0;
            if (i < 0) break;
            ++cur[i];
        }
        return out;
    };

    json labels = json::object();
    for (int n = 0; n <= kMaxSize; ++n) {
        json toks = json::array();
        for (const auto& vals : weights_over(n)) toks.push_back(weight_token(vals));
        labels[std::to_string(n)] = toks;
    }
    json pull = json::object();
    for (const Fn& f : fns) {
        bool is_id = f.src == f.dst;
        for (int i = 0; i < f.src && is_id; ++i) is_id = f.tab[i] == i;
        if (is_id) continue;  // identity pulls are implied
        json mapping = json::object();
        for (const auto& vals : weights_over(f.dst)) {
            std::vector<int> pulled(f.src);
            for (int i = 0; i < f.src; ++i) pulled[i] = vals[f.tab[i]];
            mapping[weight_token(vals)] = weight_token(pulled);
        }
        pull[f.id] = mapping;
    }
    doc["fibered"] = json{{"labels", labels}, {"pull", pull}};

    return doc;
}

// The poset bot <= x, y <= top viewed as a category: one morphism per
// comparable pair, everything confined and specialized, any fiber square
// independent, pullbacks given by meets, and a two-label fibered layer whose
// pulls are identities on tokens.
inline nlohmann::json make_diamond_document() {
    using nlohmann::json;
    const std::vector<std::string> objs = {"bot", "x", "y", "top"};
    auto leq = [](const std::string& a, const std::string& b) {
        return a == b || a == "bot" || b == "top";
    };
    auto meet = [&](const std::string& a, const std::string& b) -> std::string {
        if (leq(a, b)) return a;
        if (leq(b, a)) return b;
        return "bot";
    };
    auto mor_id = [](const std::string& a, const std::string& b) {
        return a == b ? "id_" + a : a + "_" + b;
    };

    json doc;
    doc["name"] = "diamond";
    doc["final_object"] = "top";
    doc["confined"] = "all";
    doc["specialized"] = "all";
    doc["squares"] = "all-fiber";

    json objects = json::array();
    for (const auto& o : objs) objects.push_back(json{{"id", o}});
    doc["objects"] = objects;

    json morphisms = json::array();
    json identities = json::object();
    std::vector<std::pair<std::string, std::string>> arrows;
    for (const auto& a : objs)
        for (const auto& b : objs)
            if (leq(a, b)) {
                arrows.emplace_back(a, b);
                morphisms.push_back(json{{"id", mor_id(a, b)}, {"src", a}, {"dst", b}});
                if (a == b) identities[a] = mor_id(a, b);
            }
    doc["morphisms"] = morphisms;
    doc["identities"] = identities;

    json compose = json::array();
    for (const auto& [a, b] : arrows)
        for (const auto& [b2, c] : arrows)
            if (b == b2 && a != b && b != c)
                compose.push_back(json{{"first", mor_id(a, b)},
                                       {"then", mor_id(b, c)},
                                       {"equals", mor_id(a, c)}});
    doc["compose"] = compose;

    json pullbacks = json::array();
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        for (std::size_t j = i; j < arrows.size(); ++j) {
            if (arrows[i].second != arrows[j].second) continue;
            const std::string& a = arrows[i].first;
            const std::string& b = arrows[j].first;
            std::string m = meet(a, b);
            pullbacks.push_back(json{{"left", mor_id(a, arrows[i].second)},
                                     {"right", mor_id(b, arrows[j].second)},
                                     {"apex", m},
                                     {"proj_left", mor_id(m, a)},
                                     {"proj_right", mor_id(m, b)}});
        }
    }
    doc["pullbacks"] = pullbacks;

    json labels = json::object();
    for (const auto& o : objs) labels[o] = json::array({"u", "v"});
    json pull = json::object();
    for (const auto& [a, b] : arrows)
        if (a != b) pull[mor_id(a, b)] = json{{"u", "u"}, {"v", "v"}};
    doc["fibered"] = json{{"labels", labels}, {"pull", pull}};

    return doc;
}

inline nlohmann::json make_document(const std::string& name) {
    if (name == "fs4") return make_fs4_document();
    if (name == "diamond") return make_diamond_document();
    throw Error("unknown fixture `" + name + "` (expected fs4 or diamond)");
}

}  // namespace fixtures
}  // namespace obt
