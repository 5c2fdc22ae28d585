#pragma once

#include <fstream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "obt/category.hpp"
#include "obt/errors.hpp"

namespace obt {

// A loaded category document. The fibered layer points into *cat, so the pair
// travels together.
struct World {
    std::unique_ptr<Category> cat;
    std::unique_ptr<FiberedCategory> fibered;  // null when the document has no fibered section

    const Category& category() const { return *cat; }
    const FiberedCategory* fibered_or_null() const { return fibered.get(); }
};

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field `") + key + "`");
    return *it;
}

inline std::string require_string(const nlohmann::json& j, const char* key) {
    const auto& v = require_field(j, key);
    if (!v.is_string()) throw SchemaError(std::string("field `") + key + "` must be a string");
    return v.get<std::string>();
}

}  // namespace detail

// Populates a Category (plus the optional fibered layer) from a document.
// Performs schema checks only; semantic validation is validate()'s job.
inline World load_category(const nlohmann::json& doc) {
    using detail::require_field;
    using detail::require_string;
    if (!doc.is_object()) throw SchemaError("category document must be a JSON object");

    CategoryData d;
    d.name = doc.value("name", std::string{});

    std::unordered_map<std::string, Obj> obj_ix;
    for (const auto& o : require_field(doc, "objects")) {
        std::string id = require_string(o, "id");
        if (!obj_ix.emplace(id, static_cast<Obj>(d.object_ids.size())).second)
            throw SchemaError("duplicate object id `" + id + "`");
        d.object_ids.push_back(id);
    }
    auto obj_of = [&](const std::string& id) -> Obj {
        auto it = obj_ix.find(id);
        if (it == obj_ix.end()) throw SchemaError("dangling object reference `" + id + "`");
        return it->second;
    };

    std::unordered_map<std::string, Mor> mor_ix;
    for (const auto& m : require_field(doc, "morphisms")) {
        std::string id = require_string(m, "id");
        if (!mor_ix.emplace(id, static_cast<Mor>(d.morphism_ids.size())).second)
            throw SchemaError("duplicate morphism id `" + id + "`");
        d.morphism_ids.push_back(id);
        d.mor_src.push_back(obj_of(require_string(m, "src")));
        d.mor_dst.push_back(obj_of(require_string(m, "dst")));
    }
    auto mor_of = [&](const std::string& id) -> Mor {
        auto it = mor_ix.find(id);
        if (it == mor_ix.end()) throw SchemaError("dangling morphism reference `" + id + "`");
        return it->second;
    };
    std::size_t m = d.morphism_ids.size();

    d.identity.assign(d.object_ids.size(), kNone);
    for (const auto& [oid, mid] : require_field(doc, "identities").items()) {
        Obj x = obj_of(oid);
        Mor f = mor_of(mid.get<std::string>());
        if (d.mor_src[f] != x || d.mor_dst[f] != x)
            throw SchemaError("identity of `" + oid + "` must be an endomorphism of it");
        d.identity[x] = f;
    }
    for (Obj x = 0; x < d.identity.size(); ++x)
        if (d.identity[x] == kNone)
            throw SchemaError("object `" + d.object_ids[x] + "` has no identity morphism");

    d.final_object = obj_of(require_string(doc, "final_object"));

    d.compose.assign(m * m, kNone);
    auto put_compose = [&](Mor f, Mor g, Mor r) {
        if (d.mor_dst[f] != d.mor_src[g])
            throw SchemaError("malformed composition entry: (" + d.morphism_ids[f] + ", " +
                              d.morphism_ids[g] + ") is not composable");
        Mor& slot = d.compose[static_cast<std::size_t>(f) * m + g];
        if (slot != kNone && slot != r)
            throw SchemaError("conflicting composition entries for (" + d.morphism_ids[f] +
                              ", " + d.morphism_ids[g] + ")");
        slot = r;
    };
    for (const auto& e : require_field(doc, "compose")) {
        Mor f = mor_of(require_string(e, "first"));
        Mor g = mor_of(require_string(e, "then"));
        Mor r = mor_of(require_string(e, "equals"));
        put_compose(f, g, r);
    }
    // Identity compositions need not be written out.
    for (Mor f = 0; f < m; ++f) {
        put_compose(d.identity[d.mor_src[f]], f, f);
        put_compose(f, d.identity[d.mor_dst[f]], f);
    }

    auto load_class = [&](const char* key) {
        std::vector<bool> cls(m, false);
        const auto& v = require_field(doc, key);
        if (v.is_string() && v.get<std::string>() == "all") {
            cls.assign(m, true);
        } else if (v.is_array()) {
            for (const auto& id : v) cls[mor_of(id.get<std::string>())] = true;
        } else {
            throw SchemaError(std::string("field `") + key + "` must be \"all\" or a list");
        }
        return cls;
    };
    d.confined = load_class("confined");
    d.specialized = load_class("specialized");

    const auto& sq = require_field(doc, "squares");
    if (sq.is_string() && sq.get<std::string>() == "all-fiber") {
        d.square_mode = SquareMode::AllFiberSquares;
    } else if (sq.is_array()) {
        d.square_mode = SquareMode::Explicit;
        for (const auto& s : sq) {
            d.declared_squares.push_back(Square{mor_of(require_string(s, "top")),
                                                mor_of(require_string(s, "left")),
                                                mor_of(require_string(s, "right")),
                                                mor_of(require_string(s, "bottom"))});
        }
    } else {
        throw SchemaError("field `squares` must be \"all-fiber\" or a list of squares");
    }

    for (const auto& p : require_field(doc, "pullbacks")) {
        Mor l = mor_of(require_string(p, "left"));
        Mor r = mor_of(require_string(p, "right"));
        if (d.mor_dst[l] != d.mor_dst[r])
            throw SchemaError("pullback cospan legs have different targets: (" +
                              d.morphism_ids[l] + ", " + d.morphism_ids[r] + ")");
        PullbackData pb{obj_of(require_string(p, "apex")),
                        mor_of(require_string(p, "proj_left")),
                        mor_of(require_string(p, "proj_right"))};
        if (!d.pullbacks.emplace(pack_pair(l, r), pb).second)
            throw SchemaError("duplicate pullback entry for cospan (" + d.morphism_ids[l] +
                              ", " + d.morphism_ids[r] + ")");
    }

    if (auto it = doc.find("coproducts"); it != doc.end()) {
        for (const auto& c : *it) {
            d.coproducts.push_back(CoproductData{obj_of(require_string(c, "left")),
                                                 obj_of(require_string(c, "right")),
                                                 obj_of(require_string(c, "object")),
                                                 mor_of(require_string(c, "inj_left")),
                                                 mor_of(require_string(c, "inj_right"))});
        }
    }

    if (auto it = doc.find("carriers"); it != doc.end()) {
        Carriers car;
        car.elems.assign(d.object_ids.size(), {});
        car.map.assign(m, {});
        for (const auto& [oid, elems] : require_field(*it, "objects").items()) {
            Obj x = obj_of(oid);
            std::set<std::string> seen;
            for (const auto& e : elems) {
                std::string name = e.get<std::string>();
                if (!seen.insert(name).second)
                    throw SchemaError("duplicate carrier element `" + name + "` of `" + oid + "`");
                car.elems[x].push_back(name);
            }
        }
        auto elem_of = [&](Obj x, const std::string& name) -> std::uint32_t {
            for (std::uint32_t i = 0; i < car.elems[x].size(); ++i)
                if (car.elems[x][i] == name) return i;
            throw SchemaError("unknown carrier element `" + name + "` of `" +
                              d.object_ids[x] + "`");
        };
        for (const auto& [mid, images] : require_field(*it, "maps").items()) {
            Mor f = mor_of(mid);
            if (images.size() != car.elems[d.mor_src[f]].size())
                throw SchemaError("carrier map of `" + mid + "` has wrong arity");
            for (const auto& img : images)
                car.map[f].push_back(elem_of(d.mor_dst[f], img.get<std::string>()));
        }
        // Identity maps may be omitted.
        for (Obj x = 0; x < d.object_ids.size(); ++x) {
            Mor idm = d.identity[x];
            if (car.map[idm].empty() && !car.elems[x].empty()) {
                for (std::uint32_t i = 0; i < car.elems[x].size(); ++i) car.map[idm].push_back(i);
            }
        }
        for (Mor f = 0; f < m; ++f)
            if (car.map[f].size() != car.elems[d.mor_src[f]].size())
                throw SchemaError("carrier map missing for morphism `" + d.morphism_ids[f] + "`");
        d.carriers = std::move(car);
    }

    World w;
    bool has_fibered = doc.find("fibered") != doc.end();
    nlohmann::json fib;
    if (has_fibered) fib = doc.at("fibered");

    w.cat = std::make_unique<Category>(std::move(d));
    const Category& cat = *w.cat;

    if (has_fibered) {
        std::vector<std::vector<std::string>> labels(cat.object_count());
        for (const auto& [oid, toks] : require_field(fib, "labels").items()) {
            auto x = cat.find_object(oid);
            if (!x) throw SchemaError("dangling object reference `" + oid + "` in fibered.labels");
            std::set<std::string> seen;
            for (const auto& t : toks) {
                std::string tok = t.get<std::string>();
                if (!seen.insert(tok).second)
                    throw SchemaError("duplicate label `" + tok + "` over `" + oid + "`");
                labels[*x].push_back(tok);
            }
        }
        auto label_of = [&](Obj x, const std::string& tok) -> Label {
            for (Label l = 0; l < labels[x].size(); ++l)
                if (labels[x][l] == tok) return l;
            throw SchemaError("unknown label `" + tok + "` over `" + cat.object_id(x) + "`");
        };
        std::vector<std::vector<Label>> pull(cat.morphism_count());
        for (Mor f = 0; f < cat.morphism_count(); ++f)
            pull[f].assign(labels[cat.dst(f)].size(), kNone);
        if (auto it = fib.find("pull"); it != fib.end()) {
            for (const auto& [mid, mapping] : it->items()) {
                auto f = cat.find_morphism(mid);
                if (!f)
                    throw SchemaError("dangling morphism reference `" + mid +
                                      "` in fibered.pull");
                for (const auto& [tdst, tsrc] : mapping.items())
                    pull[*f][label_of(cat.dst(*f), tdst)] =
                        label_of(cat.src(*f), tsrc.get<std::string>());
            }
        }
        // Identity pulls may be omitted: pull(id_X, L) = L.
        for (Obj x = 0; x < cat.object_count(); ++x) {
            Mor idm = cat.identity(x);
            for (Label l = 0; l < labels[x].size(); ++l)
                if (pull[idm][l] == kNone) pull[idm][l] = l;
        }
        w.fibered = std::make_unique<FiberedCategory>(cat, std::move(labels), std::move(pull));
    }
    return w;
}

inline World load_category_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open category document `" + path + "`");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("malformed JSON in `" + path + "`: " + e.what());
    }
    return load_category(doc);
}

}  // namespace obt
