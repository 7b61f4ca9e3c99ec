/**
 * @file json_io.hpp
 * @brief JSON forms of the calculus types.
 *
 *   SortedSeq        {"seq":[1,3,4]}            (a bare array is also read)
 *   SignedStep       {"deltas":{"0":3,"1":-1}}  (degree keys are strings)
 *   descriptor       {"name":..,"rank":..,"e":..|null,"h0":{"low":..,"table":[..],"rule":".."},
 *                     "ambient":"pn:<n>" (optional), "very_primitive":bool (optional)}
 *                    or a built-in name: "zero", "pn:<n>"
 *   element          {"ancestor":..,"a":[..],"b":[..],"m":..} (+ optional "min_rank";
 *                    "sigma" instead of a/b; "rank"/"sigma" are checked if both given)
 *   move             {"move":"elem","a":3,"b":1} | {"move":"rigid"} |
 *                    {"move":"reduce","s":[..]} | {"move":"extend","s":[..]}, optional "level"
 *
 * Output uses ordered_json so the same value always prints the same bytes.
 */
#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "biliaison/classrep.hpp"
#include "biliaison/minimality.hpp"
#include "biliaison/moves.hpp"
#include "json.hpp"

namespace biliaison::io {

using Json = nlohmann::ordered_json;

struct ReadOptions {
    bool strict = false;                      ///< reject instead of repairing
    std::vector<std::string>* warnings = nullptr;
};

inline void warn(const ReadOptions& opt, std::string msg) {
    if (opt.warnings) opt.warnings->push_back(std::move(msg));
}

[[noreturn]] inline void parse_fail(const std::string& msg) { throw Error(ErrorCode::parse, msg); }

inline Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        parse_fail(std::string("malformed JSON: ") + e.what());
    }
}

inline std::int64_t read_int(const Json& j, const std::string& what) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned() &&
            j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
            parse_fail(what + " is out of the 64-bit range");
        }
        return j.get<std::int64_t>();
    }
    parse_fail(what + " must be an integer, got " + j.dump());
}

inline std::int64_t parse_int_key(const std::string& key) {
    std::int64_t v = 0;
    const auto* first = key.data();
    const auto* last = key.data() + key.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || key.empty()) parse_fail("degree key '" + key + "' is not an integer");
    return v;
}

inline Count read_count(const Json& j, const std::string& what) {
    if (j.is_number_unsigned()) return Count(j.get<std::uint64_t>());
    if (j.is_number_integer()) return Count(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            return Count(s);
        }
    }
    parse_fail(what + " must be a non-negative integer, got " + j.dump());
}

/// Counts that fit in 64 bits print as numbers, larger ones as digit strings.
inline Json count_to_json(const Count& c) {
    if (c >= 0 && c <= std::numeric_limits<std::int64_t>::max()) return Json(static_cast<std::int64_t>(c));
    if (c < 0 && c >= std::numeric_limits<std::int64_t>::min()) return Json(static_cast<std::int64_t>(c));
    return Json(c.str());
}

// --- SortedSeq ---------------------------------------------------------------

inline Json entries_to_json(const SortedSeq& s) {
    Json arr = Json::array();
    for (Degree x : s) arr.push_back(x);
    return arr;
}

inline Json to_json(const SortedSeq& s) { return Json{{"seq", entries_to_json(s)}}; }

inline SortedSeq seq_from_json(const Json& j, const ReadOptions& opt = {}) {
    const Json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("seq")) parse_fail("sequence object needs a \"seq\" array");
        arr = &j.at("seq");
    }
    if (!arr->is_array()) parse_fail("sequence must be an array of integers");
    std::vector<Degree> entries;
    entries.reserve(arr->size());
    for (const auto& x : *arr) entries.push_back(read_int(x, "sequence entry"));
    if (!std::is_sorted(entries.begin(), entries.end())) {
        if (opt.strict) throw Error(ErrorCode::invalid_sequence, "sequence entries are not non-decreasing");
        warn(opt, "sequence " + arr->dump() + " was not non-decreasing; sorted it");
    }
    return SortedSeq(std::move(entries));
}

// --- SignedStep --------------------------------------------------------------

inline Json deltas_to_json(const SignedStep& s) {
    Json obj = Json::object();
    for (const auto& [degree, jump] : s.deltas()) obj[std::to_string(degree)] = jump;
    return obj;
}

inline Json to_json(const SignedStep& s) { return Json{{"deltas", deltas_to_json(s)}}; }

inline SignedStep step_from_json(const Json& j, const ReadOptions& opt = {}) {
    const Json* obj = &j;
    if (j.is_object() && j.contains("deltas")) obj = &j.at("deltas");
    if (!obj->is_object()) parse_fail("step function must be an object {\"deltas\":{degree:jump}}");
    SignedStep::Deltas d;
    for (const auto& [key, value] : obj->items()) {
        const std::int64_t jump = read_int(value, "jump at degree " + key);
        if (jump == 0) {
            if (opt.strict) parse_fail("zero jump at degree " + key);
            warn(opt, "dropped zero jump at degree " + key);
            continue;
        }
        d[parse_int_key(key)] += jump;
    }
    return SignedStep(std::move(d));
}

/// {"window":[lo,hi],"values":[...]} over the support window with one degree
/// of margin; zero prints an empty window.
inline Json table_to_json(const SignedStep& s) {
    Json values = Json::array();
    if (s.is_zero()) return Json{{"window", Json::array()}, {"values", values}};
    const Degree lo = *s.min_support() - 1;
    const Degree hi = *s.max_support() + 1;
    for (Degree l = lo; l <= hi; ++l) values.push_back(s.value(l));
    return Json{{"window", Json::array({lo, hi})}, {"values", values}};
}

// --- descriptors -------------------------------------------------------------

inline std::optional<unsigned> parse_ambient(const std::string& text) {
    auto [rule, args] = SectionCounts::parse_rule(text);
    if (rule != SectionCounts::Rule::projective) parse_fail("ambient must be \"pn:<n>\", got '" + text + "'");
    return args.first;
}

/// Built-in descriptors by name: "zero", "pn:<n>".
inline PrimitiveDescriptor builtin_descriptor(const std::string& name) {
    if (name == "zero") return PrimitiveDescriptor::zero_sheaf();
    if (name.rfind("pn:", 0) == 0) return PrimitiveDescriptor::structure_sheaf(*parse_ambient(name));
    parse_fail("unknown built-in descriptor '" + name + "'");
}

inline Json to_json(const PrimitiveDescriptor& e) {
    Json h0{{"low", e.h0.low()}, {"table", Json::array()}, {"rule", e.h0.rule_name()}};
    for (const auto& c : e.h0.table()) h0["table"].push_back(count_to_json(c));
    Json j{{"name", e.name}, {"rank", e.rank}};
    j["e"] = e.first_section ? Json(*e.first_section) : Json(nullptr);
    j["h0"] = std::move(h0);
    if (e.ambient) j["ambient"] = "pn:" + std::to_string(*e.ambient);
    if (!e.very_primitive) j["very_primitive"] = false;
    return j;
}

inline PrimitiveDescriptor descriptor_from_json(const Json& j) {
    if (j.is_string()) return builtin_descriptor(j.get<std::string>());
    if (!j.is_object()) parse_fail("descriptor must be an object or a built-in name");
    PrimitiveDescriptor e;
    if (!j.contains("name") || !j.at("name").is_string()) parse_fail("descriptor needs a string \"name\"");
    e.name = j.at("name").get<std::string>();
    if (!j.contains("rank")) parse_fail("descriptor needs \"rank\"");
    e.rank = read_int(j.at("rank"), "descriptor rank");
    if (!j.contains("e")) parse_fail("descriptor needs \"e\" (integer or null)");
    if (!j.at("e").is_null()) e.first_section = read_int(j.at("e"), "descriptor e");
    if (j.contains("h0")) {
        const Json& h = j.at("h0");
        if (!h.is_object()) parse_fail("\"h0\" must be an object");
        const Degree low = h.contains("low") ? read_int(h.at("low"), "h0 low") : 0;
        std::vector<Count> table;
        if (h.contains("table")) {
            if (!h.at("table").is_array()) parse_fail("h0 table must be an array");
            for (const auto& c : h.at("table")) table.push_back(read_count(c, "h0 table entry"));
        }
        const std::string rule_text = h.contains("rule") ? h.at("rule").get<std::string>() : "undefined";
        auto [rule, args] = SectionCounts::parse_rule(rule_text);
        e.h0 = SectionCounts(low, std::move(table), rule, args.first, args.second);
    }
    if (j.contains("ambient") && !j.at("ambient").is_null()) {
        e.ambient = parse_ambient(j.at("ambient").get<std::string>());
    }
    if (j.contains("very_primitive")) e.very_primitive = j.at("very_primitive").get<bool>();
    e.validate();
    return e;
}

// --- elements ----------------------------------------------------------------

inline Json to_json(const ClassElement& f) {
    Json j{{"ancestor", to_json(f.ancestor())}};
    if (f.presentation()) {
        j["a"] = entries_to_json(f.presentation()->a);
        j["b"] = entries_to_json(f.presentation()->b);
    }
    j["m"] = f.m();
    if (f.min_rank()) j["min_rank"] = *f.min_rank();
    j["rank"] = f.rank();
    j["sigma"] = to_json(f.sigma());
    return j;
}

/**
 * @param ancestor_override used when the element has no "ancestor" field, or
 *        to replace it (CLI --ancestor FILE).
 */
inline ClassElement element_from_json(const Json& j, const ReadOptions& opt = {},
                                      const std::optional<PrimitiveDescriptor>& ancestor_override = std::nullopt) {
    if (!j.is_object()) parse_fail("element must be a JSON object");
    PrimitiveDescriptor e;
    if (ancestor_override) {
        e = *ancestor_override;
    } else if (j.contains("ancestor")) {
        e = descriptor_from_json(j.at("ancestor"));
    } else {
        parse_fail("element needs an \"ancestor\" (or --ancestor FILE)");
    }
    if (!j.contains("m")) parse_fail("element needs the level \"m\"");
    const auto m = read_int(j.at("m"), "level m");
    if (m < 1 || m > std::numeric_limits<int>::max()) throw Error(ErrorCode::precondition, "level m must be >= 1");
    std::optional<std::int64_t> min_rank;
    if (j.contains("min_rank") && !j.at("min_rank").is_null()) min_rank = read_int(j.at("min_rank"), "min_rank");

    const bool has_pair = j.contains("a") || j.contains("b");
    std::optional<ClassElement> out;
    if (has_pair) {
        const SortedSeq a = j.contains("a") ? seq_from_json(j.at("a"), opt) : SortedSeq{};
        const SortedSeq b = j.contains("b") ? seq_from_json(j.at("b"), opt) : SortedSeq{};
        out = from_presentation(e, a, b, static_cast<int>(m));
        if (j.contains("sigma") && step_from_json(j.at("sigma"), opt) != out->sigma()) {
            throw Error(ErrorCode::integrity, "\"sigma\" does not match the presentation");
        }
    } else if (j.contains("sigma")) {
        out.emplace(e, step_from_json(j.at("sigma"), opt), static_cast<int>(m));
    } else {
        parse_fail("element needs \"a\"/\"b\" or \"sigma\"");
    }
    if (min_rank) out = out->with_min_rank(min_rank);
    if (j.contains("rank") && read_int(j.at("rank"), "rank") != out->rank()) {
        throw Error(ErrorCode::integrity, "\"rank\" does not match the derived rank");
    }
    return std::move(*out);
}

// --- moves -------------------------------------------------------------------

inline Json to_json(const Move& mv) {
    Json j = std::visit(
        [](const auto& k) -> Json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ElemBiliaison>) return Json{{"move", "elem"}, {"a", k.a}, {"b", k.b}};
            else if constexpr (std::is_same_v<K, Rigid>) return Json{{"move", "rigid"}};
            else if constexpr (std::is_same_v<K, Reduction>) return Json{{"move", "reduce"}, {"s", entries_to_json(k.s)}};
            else return Json{{"move", "extend"}, {"s", entries_to_json(k.s)}};
        },
        mv.kind);
    if (mv.level) j["level"] = *mv.level;
    return j;
}

inline Move move_from_json(const Json& j, const ReadOptions& opt = {}) {
    if (!j.is_object() || !j.contains("move") || !j.at("move").is_string()) {
        parse_fail("move must be an object with a \"move\" kind");
    }
    const auto kind = j.at("move").get<std::string>();
    std::optional<int> level;
    if (j.contains("level")) level = static_cast<int>(read_int(j.at("level"), "move level"));
    if (kind == "elem") {
        if (!j.contains("a") || !j.contains("b")) parse_fail("elem move needs \"a\" and \"b\"");
        return Move::elem(read_int(j.at("a"), "elem a"), read_int(j.at("b"), "elem b"), level);
    }
    if (kind == "rigid") return Move::rigid(level);
    if (kind == "reduce" || kind == "extend") {
        if (!j.contains("s")) parse_fail(kind + " move needs \"s\"");
        SortedSeq s = seq_from_json(j.at("s"), opt);
        return kind == "reduce" ? Move::reduce(std::move(s), level) : Move::extend(std::move(s), level);
    }
    parse_fail("unknown move kind '" + kind + "'");
}

inline Json to_json(const std::vector<Move>& chain) {
    Json arr = Json::array();
    for (const auto& mv : chain) arr.push_back(to_json(mv));
    return arr;
}

inline std::vector<Move> chain_from_json(const Json& j, const ReadOptions& opt = {}) {
    if (!j.is_array()) parse_fail("chain must be a JSON array of moves");
    std::vector<Move> out;
    for (const auto& m : j) out.push_back(move_from_json(m, opt));
    return out;
}

// --- reports -----------------------------------------------------------------

inline Json to_json(const ProfileReport& r) {
    Json j{{"ok", r.ok}};
    if (r.violated) j["clause"] = std::string(to_string(*r.violated));
    if (r.witness) j["witness"] = *r.witness;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline Json to_json(const NecessaryResult& r) {
    Json j{{"verdict", std::string(to_string(r.verdict))}};
    if (r.witness) j["witness_degree"] = *r.witness;
    j["c_prime"] = entries_to_json(r.c_prime);
    j["u"] = r.u;
    j["guaranteed_shape"] = entries_to_json(r.guaranteed_shape);
    return j;
}

inline Json to_json(const SufficientResult& r) {
    Json j{{"verdict", std::string(to_string(r.verdict))}};
    if (r.witness) j["witness_degree"] = *r.witness;
    j["window"] = Json::array({r.window_lo, r.window_hi});
    j["reason"] = r.reason;
    return j;
}

inline Json to_json(const MeetTree& t) {
    Json nodes = Json::array();
    for (const auto& n : t.nodes) {
        Json node;
        if (n.leaf) node["leaf"] = *n.leaf;
        else node["meet"] = Json::array({n.left, n.right});
        node["sigma"] = deltas_to_json(n.sigma);
        nodes.push_back(std::move(node));
    }
    return Json{{"root", t.root}, {"nodes", std::move(nodes)}};
}

inline Json step_to_json(const StepRecord& s) {
    Json j{{"step", s.index}, {"move", to_json(s.move)}, {"ok", s.ok}, {"rank", s.rank},
           {"sigma", deltas_to_json(s.sigma)}};
    if (!s.reason.empty()) j["reason"] = s.reason;
    return j;
}

inline Json summary_to_json(const ChainReport& r) {
    Json failures = Json::array();
    for (const auto& f : r.failures) failures.push_back(f);
    return Json{{"result", r.pass ? "PASS" : "FAIL"}, {"steps", r.steps.size()}, {"rank_changes", r.rank_changes},
                {"failures", std::move(failures)}};
}

}  // namespace biliaison::io
