#include "mvl/json_io.hpp"

#include <fstream>

#include "mvl/error.hpp"

namespace mvl {

namespace {

int label_index(const std::vector<std::string>& labels, const Json& v) {
    if (!v.is_string()) return -1;
    const auto s = v.get<std::string>();
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == s) return static_cast<int>(i);
    return -1;
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

Json algebra_to_json(const DeMorganAlgebra& m) {
    Json j;
    j["name"] = m.name();
    Json labels = Json::array();
    Json join = Json::array(), meet = Json::array(), neg = Json::array();
    for (ElemId a : m.elements()) {
        labels.push_back(m.label(a));
        Json jr = Json::array(), mr = Json::array();
        for (ElemId b : m.elements()) {
            jr.push_back(m.label(m.join(a, b)));
            mr.push_back(m.label(m.meet(a, b)));
        }
        join.push_back(jr);
        meet.push_back(mr);
        neg.push_back(m.label(m.neg(a)));
    }
    j["elements"] = labels;
    j["join"] = join;
    j["meet"] = meet;
    j["neg"] = neg;
    j["zero"] = m.label(m.zero());
    j["one"] = m.label(m.one());
    return j;
}

AlgebraTables algebra_tables_from_json(const Json& j) {
    AlgebraTables t;
    try {
        t.name = j.contains("name") ? j.at("name").get<std::string>() : std::string("custom");
        for (const auto& e : field(j, "elements")) t.elements.push_back(e.get<std::string>());
        auto table = [&](const char* key) {
            std::vector<std::vector<int>> out;
            for (const auto& row : field(j, key)) {
                std::vector<int> r;
                for (const auto& v : row) r.push_back(label_index(t.elements, v));
                out.push_back(std::move(r));
            }
            return out;
        };
        t.join = table("join");
        t.meet = table("meet");
        for (const auto& v : field(j, "neg")) t.neg.push_back(label_index(t.elements, v));
        t.zero = label_index(t.elements, field(j, "zero"));
        t.one = label_index(t.elements, field(j, "one"));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad algebra file: ") + e.what());
    }
    return t;
}

Json validation_report_to_json(const ValidationReport& r, const AlgebraTables& t) {
    Json vs = Json::array();
    for (const auto& v : r.violations) {
        Json w = Json::array();
        for (ElemId e : v.witness)
            w.push_back(index(e) < t.elements.size() ? Json(t.elements[index(e)]) : Json(index(e)));
        vs.push_back(Json{{"axiom", v.axiom}, {"witness", w}});
    }
    return Json{{"valid", r.ok()}, {"malformed", r.malformed}, {"violations", vs}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

AlgebraPtr load_algebra(std::string_view name_or_path) {
    if (DeMorganAlgebra::is_builtin(name_or_path)) return DeMorganAlgebra::builtin(name_or_path);
    auto t = algebra_tables_from_json(read_json_file(std::string(name_or_path)));
    return std::make_shared<const DeMorganAlgebra>(DeMorganAlgebra::from_tables(t));
}

Json space_to_json(const Space& s) { return Json{{"base", s.base()}, {"dim", s.dim()}}; }

Space space_from_json(const Json& j) {
    try {
        return Space(field(j, "base").get<unsigned>(), field(j, "dim").get<unsigned>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad space: ") + e.what());
    }
}

Json point_set_to_json(const PointSet& x) {
    Json out = Json::array();
    for (const auto& t : x.tuples()) out.push_back(t);
    return out;
}

PointSet point_set_from_json(const Space& space, const Json& j) {
    if (!j.is_array()) throw InputError("point set must be a list of tuples");
    PointSet s(space);
    try {
        for (const auto& t : j) s.insert(space.encode(t.get<std::vector<unsigned>>()));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad tuple: ") + e.what());
    }
    return s;
}

Json layers_to_json(const MValuedSet& x) {
    Json layers = Json::object();
    for (ElemId p : x.algebra().elements())
        if (!x.layer(p).empty()) layers[x.algebra().label(p)] = point_set_to_json(x.layer(p));
    return layers;
}

Json mvalued_set_to_json(const MValuedSet& x) {
    return Json{{"algebra", x.algebra().name()}, {"space", space_to_json(x.space())}, {"layers", layers_to_json(x)}};
}

MValuedSet layers_from_json(const Json& layers, const AlgebraPtr& algebra, const Space& space) {
    if (!layers.is_object()) throw InputError("layers must be an object keyed by element label");
    std::vector<PointSet> out(algebra->size(), PointSet(space));
    for (const auto& [label, pts] : layers.items()) out[index(algebra->at(label))] = point_set_from_json(space, pts);
    return MValuedSet::from_layers(algebra, std::move(out));
}

MValuedSet mvalued_set_from_json(const Json& j, const AlgebraPtr& algebra) {
    if (j.contains("algebra") && j.at("algebra").is_string() && j.at("algebra").get<std::string>() != algebra->name())
        throw InputError("set declared over algebra '" + j.at("algebra").get<std::string>() + "', expected '" +
                         algebra->name() + "'");
    return layers_from_json(field(j, "layers"), algebra, space_from_json(field(j, "space")));
}

}  // namespace mvl
