// Command-line surface over the biliaison calculus.
//
//   biliaison seq     meet|join|le|sigma            X [Y] [--l L] [--oracle]
//   biliaison sigma   from-pair|value|leq|min|max|add|sub|validate|table  ...
//   biliaison class   build|compare|meet|join|hilbert  F [G] [--l L] [--ancestor D]
//   biliaison minimal necessary|sufficient|pool|descent-bound  ...
//   biliaison chain   make START MIN [-o FILE] | check START CHAIN TARGET
//
// Inputs beginning with '[' or '{' are inline JSON, anything else is a path.
// Exit status: 0 success or positive verdict, 1 negative verdict, 2 error.
#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "biliaison/biliaison.hpp"

namespace biliaison::cli {

using io::Json;

enum Exit : int { kOk = 0, kVerdict = 1, kError = 2 };

struct Context {
    std::ostream& out;
    std::ostream& err;
    io::ReadOptions read;
    std::vector<std::string> warnings;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::parse, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json load(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '[' || arg.front() == '{')) return io::parse_text(arg);
    return io::parse_text(read_file(arg));
}

inline PrimitiveDescriptor load_descriptor(const std::string& arg) {
    if (arg == "zero" || arg.rfind("pn:", 0) == 0) return io::builtin_descriptor(arg);
    return io::descriptor_from_json(load(arg));
}

inline void emit(Context& ctx, const Json& j) { ctx.out << j.dump() << '\n'; }

inline void need(const std::vector<std::string>& in, std::size_t n, const std::string& op) {
    if (in.size() != n) {
        throw Error(ErrorCode::usage, op + " takes " + std::to_string(n) + " input(s), got " + std::to_string(in.size()));
    }
}

template <typename T>
const T& need_opt(const std::optional<T>& v, const std::string& flag) {
    if (!v) throw Error(ErrorCode::usage, "missing " + flag);
    return *v;
}

// --- seq ---------------------------------------------------------------------

struct SeqArgs {
    std::string op;
    std::vector<std::string> inputs;
    std::optional<Degree> l;
    bool oracle = false;
};

inline int run_seq(Context& ctx, const SeqArgs& a) {
    if (a.op == "sigma") {
        need(a.inputs, 1, "seq sigma");
        const SortedSeq s = io::seq_from_json(load(a.inputs[0]), ctx.read);
        if (a.l) {
            emit(ctx, Json{{"l", *a.l}, {"sigma", sigma_at(s, *a.l)}});
        } else {
            Json profile = Json::object();
            for (const auto& [d, v] : sigma_profile(s)) profile[std::to_string(d)] = v;
            emit(ctx, Json{{"profile", profile}});
        }
        return kOk;
    }
    need(a.inputs, 2, "seq " + a.op);
    const SortedSeq x = io::seq_from_json(load(a.inputs[0]), ctx.read);
    const SortedSeq y = io::seq_from_json(load(a.inputs[1]), ctx.read);
    if (a.op == "le") {
        const auto w = seq_le_witness(x, y);
        Json j{{"le", !w}};
        if (w) j["witness"] = *w;
        emit(ctx, j);
        return kOk;
    }
    const SortedSeq r = a.op == "meet" ? seq_meet(x, y) : seq_join(x, y);
    if (a.oracle) {
        const MeetJoin o = padded_oracle(x, y);
        if ((a.op == "meet" ? o.meet : o.join) != r) {
            throw Error(ErrorCode::integrity, "counting-function and padded routes disagree on " + a.op);
        }
    }
    emit(ctx, io::to_json(r));
    return kOk;
}

// --- sigma -------------------------------------------------------------------

struct SigmaArgs {
    std::string op;
    std::vector<std::string> inputs;
    std::optional<Degree> l;
    std::string a = "[]";
    std::string b = "[]";
    std::optional<std::string> e;
    std::optional<std::int64_t> rank_e;
    std::optional<std::int64_t> min_rank;
};

inline int run_sigma(Context& ctx, const SigmaArgs& a) {
    auto step = [&](std::size_t i) { return io::step_from_json(load(a.inputs[i]), ctx.read); };
    if (a.op == "from-pair") {
        need(a.inputs, 0, "sigma from-pair");
        const SortedSeq aa = io::seq_from_json(load(a.a), ctx.read);
        const SortedSeq bb = io::seq_from_json(load(a.b), ctx.read);
        emit(ctx, io::to_json(signed_from_pair(bb, aa)));
        return kOk;
    }
    if (a.op == "value") {
        need(a.inputs, 1, "sigma value");
        const Degree l = need_opt(a.l, "--l");
        emit(ctx, Json{{"l", l}, {"value", step(0).value(l)}});
        return kOk;
    }
    if (a.op == "table") {
        need(a.inputs, 1, "sigma table");
        emit(ctx, io::table_to_json(step(0)));
        return kOk;
    }
    if (a.op == "validate") {
        need(a.inputs, 1, "sigma validate");
        const std::string& e_text = need_opt(a.e, "--e (integer or 'none')");
        std::optional<Degree> e;
        if (e_text != "none") e = io::read_int(io::parse_text(e_text), "--e");
        const ProfileReport r = validate_profile(step(0), e, need_opt(a.rank_e, "--rank-e"), a.min_rank.value_or(0));
        emit(ctx, io::to_json(r));
        return r.ok ? kOk : kVerdict;
    }
    need(a.inputs, 2, "sigma " + a.op);
    const SignedStep s = step(0);
    const SignedStep t = step(1);
    if (a.op == "leq") {
        const auto w = sigma_leq_witness(s, t);
        Json j{{"leq", !w}};
        if (w) j["witness"] = *w;
        emit(ctx, j);
        return kOk;
    }
    SignedStep r;
    if (a.op == "min") r = pointwise_min(s, t);
    else if (a.op == "max") r = pointwise_max(s, t);
    else if (a.op == "add") r = s + t;
    else r = s - t;
    emit(ctx, io::to_json(r));
    return kOk;
}

// --- class -------------------------------------------------------------------

struct ClassArgs {
    std::string op;
    std::vector<std::string> inputs;
    std::optional<Degree> l;
    std::optional<std::string> ancestor;
};

inline std::optional<PrimitiveDescriptor> ancestor_of(const std::optional<std::string>& arg) {
    if (!arg) return std::nullopt;
    return load_descriptor(*arg);
}

inline int run_class(Context& ctx, const ClassArgs& a) {
    const auto anc = ancestor_of(a.ancestor);
    auto elem = [&](std::size_t i) { return io::element_from_json(load(a.inputs[i]), ctx.read, anc); };
    if (a.op == "build") {
        need(a.inputs, 1, "class build");
        emit(ctx, io::to_json(elem(0)));
        return kOk;
    }
    if (a.op == "hilbert") {
        need(a.inputs, 1, "class hilbert");
        emit(ctx, io::count_to_json(hilbert(elem(0), need_opt(a.l, "--l"))));
        return kOk;
    }
    need(a.inputs, 2, "class " + a.op);
    const ClassElement f = elem(0);
    const ClassElement g = elem(1);
    if (a.op == "compare") {
        require_same_ancestor(f.ancestor(), g.ancestor());
        const auto fg = sigma_leq_witness(f.sigma(), g.sigma());
        const auto gf = sigma_leq_witness(g.sigma(), f.sigma());
        Json j{{"preceq", !fg}, {"succeq", !gf}};
        if (fg) j["witness"] = *fg;
        emit(ctx, j);
        return kOk;
    }
    emit(ctx, io::to_json(a.op == "meet" ? class_meet(f, g) : class_join(f, g)));
    return kOk;
}

// --- minimal -----------------------------------------------------------------

struct MinimalArgs {
    std::string op;
    std::vector<std::string> inputs;
    std::optional<std::string> c;
    std::optional<std::string> a;
    std::optional<std::int64_t> rank_e;
    std::optional<int> m;
    bool minimal_rank = false;
    std::optional<std::string> ancestor;
    std::optional<Degree> lo;
    std::optional<Degree> hi;
};

inline int run_minimal(Context& ctx, const MinimalArgs& a) {
    const auto anc = ancestor_of(a.ancestor);
    if (a.op == "necessary") {
        need(a.inputs, 0, "minimal necessary");
        const SortedSeq c = io::seq_from_json(load(need_opt(a.c, "--c")), ctx.read);
        const SortedSeq aa = io::seq_from_json(load(need_opt(a.a, "--a")), ctx.read);
        const NecessaryResult r = necessary_check(c, aa, need_opt(a.rank_e, "--rank-e"), need_opt(a.m, "--m"));
        emit(ctx, io::to_json(r));
        return r.verdict == Verdict::not_minimal ? kVerdict : kOk;
    }
    if (a.op == "sufficient") {
        need(a.inputs, 1, "minimal sufficient");
        const ClassElement f = io::element_from_json(load(a.inputs[0]), ctx.read, anc);
        const SufficientResult r = sufficient_check(f, a.minimal_rank);
        emit(ctx, io::to_json(r));
        return r.verdict == Verdict::minimal ? kOk : kVerdict;
    }
    if (a.op == "pool") {
        need(a.inputs, 1, "minimal pool");
        const Json j = load(a.inputs[0]);
        if (!j.is_array()) io::parse_fail("pool must be a JSON array of elements");
        std::vector<ClassElement> pool;
        for (const auto& x : j) pool.push_back(io::element_from_json(x, ctx.read, anc));
        const PoolMinimum pm = pool_minimum(pool);
        Json out{{"minimum", io::to_json(pm.minimum)}};
        out["attained_by"] = pm.attained_by ? Json(*pm.attained_by) : Json(nullptr);
        out["certificate"] = io::to_json(pm.certificate);
        emit(ctx, out);
        return kOk;
    }
    need(a.inputs, 1, "minimal descent-bound");
    const ClassElement head = io::element_from_json(load(a.inputs[0]), ctx.read, anc);
    const Count bound = descent_bound(head, need_opt(a.lo, "--lo"), need_opt(a.hi, "--hi"));
    emit(ctx, Json{{"bound", io::count_to_json(bound)}});
    return kOk;
}

// --- chain -------------------------------------------------------------------

struct ChainArgs {
    std::string op;
    std::vector<std::string> inputs;
    std::optional<std::string> output;
    std::optional<std::string> ancestor;
};

inline int run_chain(Context& ctx, const ChainArgs& a) {
    const auto anc = ancestor_of(a.ancestor);
    auto elem = [&](std::size_t i) { return io::element_from_json(load(a.inputs[i]), ctx.read, anc); };
    if (a.op == "make") {
        need(a.inputs, 2, "chain make");
        const Json chain = io::to_json(synthesize_chain(elem(0), elem(1)));
        if (a.output) {
            std::ofstream file(*a.output, std::ios::binary);
            if (!file) throw Error(ErrorCode::parse, "cannot write '" + *a.output + "'");
            file << chain.dump() << '\n';
        }
        emit(ctx, chain);
        return kOk;
    }
    need(a.inputs, 3, "chain check");
    const ClassElement start = elem(0);
    const std::vector<Move> chain = io::chain_from_json(load(a.inputs[1]), ctx.read);
    const ClassElement target = elem(2);
    const ChainReport rep = verify_chain(start, chain, target);
    for (const auto& s : rep.steps) emit(ctx, io::step_to_json(s));
    emit(ctx, io::summary_to_json(rep));
    return rep.pass ? kOk : kVerdict;
}

// CLI11 splits vector values on commas and reads "[]" as an empty list, so
// inputs are collected through fixed string slots instead.
struct InputSlots {
    std::optional<std::string> slot[3];
};

inline void add_inputs(CLI::App* cmd, InputSlots& slots, const std::string& desc) {
    cmd->add_option("input1", slots.slot[0], desc);
    cmd->add_option("input2", slots.slot[1]);
    cmd->add_option("input3", slots.slot[2]);
}

inline std::vector<std::string> collect(const InputSlots& slots) {
    std::vector<std::string> out;
    for (const auto& s : slots.slot) {
        if (s) out.push_back(*s);
    }
    return out;
}

// --- entry -------------------------------------------------------------------

inline void report_error(std::ostream& err, std::string_view code, const std::string& message) {
    err << Json{{"error", code}, {"message", message}}.dump() << '\n';
}

/// @param args argv[1..]; @param strict_env BILIAISON_STRICT=1 in the environment.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool strict_env) {
    CLI::App app{"Sigma-function calculus for biliaison classes", "biliaison"};
    app.require_subcommand(1);
    bool strict = false;
    app.add_flag("--strict", strict, "reject unsorted input and zero jumps instead of repairing");
    app.fallthrough();

    SeqArgs seq;
    auto* seq_cmd = app.add_subcommand("seq", "sorted-sequence lattice");
    seq_cmd->add_option("op", seq.op)->required()->check(CLI::IsMember({"meet", "join", "le", "sigma"}));
    InputSlots seq_in;
    add_inputs(seq_cmd, seq_in, "sequences (inline JSON or file)");
    seq_cmd->add_option("--l", seq.l, "degree for sigma");
    seq_cmd->add_flag("--oracle", seq.oracle, "cross-check meet/join against the padded route");

    SigmaArgs sig;
    auto* sig_cmd = app.add_subcommand("sigma", "signed step functions");
    sig_cmd->add_option("op", sig.op)->required()->check(
        CLI::IsMember({"from-pair", "value", "leq", "min", "max", "add", "sub", "validate", "table"}));
    InputSlots sig_in;
    add_inputs(sig_cmd, sig_in, "step functions (inline JSON or file)");
    sig_cmd->add_option("--l", sig.l, "degree for value");
    sig_cmd->add_option("--a", sig.a, "subtracted sequence for from-pair");
    sig_cmd->add_option("--b", sig.b, "added sequence for from-pair");
    sig_cmd->add_option("--e", sig.e, "first section degree of E, or 'none'");
    sig_cmd->add_option("--rank-e", sig.rank_e, "rank of E");
    sig_cmd->add_option("--min-rank", sig.min_rank, "minimal rank r in the class");

    ClassArgs cls;
    auto* cls_cmd = app.add_subcommand("class", "class elements");
    cls_cmd->add_option("op", cls.op)->required()->check(
        CLI::IsMember({"build", "compare", "meet", "join", "hilbert"}));
    InputSlots cls_in;
    add_inputs(cls_cmd, cls_in, "elements (inline JSON or file)");
    cls_cmd->add_option("--l", cls.l, "degree for hilbert");
    cls_cmd->add_option("--ancestor", cls.ancestor, "descriptor file or built-in name");

    MinimalArgs mn;
    auto* mn_cmd = app.add_subcommand("minimal", "minimality criteria");
    mn_cmd->add_option("op", mn.op)->required()->check(
        CLI::IsMember({"necessary", "sufficient", "pool", "descent-bound"}));
    InputSlots mn_in;
    add_inputs(mn_cmd, mn_in, "element or pool (inline JSON or file)");
    mn_cmd->add_option("--c", mn.c, "twists of a surjection O(c) -> E");
    mn_cmd->add_option("--a", mn.a, "shape of the reduction O(a) -> E");
    mn_cmd->add_option("--rank-e", mn.rank_e, "rank of E");
    mn_cmd->add_option("--m", mn.m, "level m");
    mn_cmd->add_flag("--minimal-rank", mn.minimal_rank, "assert F has minimal rank in its class");
    mn_cmd->add_option("--ancestor", mn.ancestor, "descriptor file or built-in name");
    mn_cmd->add_option("--lo", mn.lo, "lowest degree of the descent window");
    mn_cmd->add_option("--hi", mn.hi, "highest degree of the descent window");

    ChainArgs ch;
    auto* ch_cmd = app.add_subcommand("chain", "move chains");
    ch_cmd->add_option("op", ch.op)->required()->check(CLI::IsMember({"make", "check"}));
    InputSlots ch_in;
    add_inputs(ch_cmd, ch_in, "elements and chain (inline JSON or file)");
    ch_cmd->add_option("-o,--output", ch.output, "also write the chain to this file");
    ch_cmd->add_option("--ancestor", ch.ancestor, "descriptor file or built-in name");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", e.what());
        return kError;
    }

    seq.inputs = collect(seq_in);
    sig.inputs = collect(sig_in);
    cls.inputs = collect(cls_in);
    mn.inputs = collect(mn_in);
    ch.inputs = collect(ch_in);

    Context ctx{out, err, {}, {}};
    ctx.read.strict = strict || strict_env;
    ctx.read.warnings = &ctx.warnings;
    int code = kError;
    try {
        if (seq_cmd->parsed()) code = run_seq(ctx, seq);
        else if (sig_cmd->parsed()) code = run_sigma(ctx, sig);
        else if (cls_cmd->parsed()) code = run_class(ctx, cls);
        else if (mn_cmd->parsed()) code = run_minimal(ctx, mn);
        else code = run_chain(ctx, ch);
    } catch (const Error& e) {
        report_error(err, to_string(e.code()), e.what());
        code = kError;
    } catch (const nlohmann::json::exception& e) {
        report_error(err, "parse", e.what());
        code = kError;
    }
    for (const auto& w : ctx.warnings) err << Json{{"warning", w}}.dump() << '\n';
    return code;
}

}  // namespace biliaison::cli
