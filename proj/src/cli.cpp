#include "comet/cli.hpp"

#include "comet/inference.hpp"
#include "comet/laws.hpp"
#include "comet/surface.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace comet {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Text, Structured };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string program_name(const std::string& path) { return std::filesystem::path(path).filename().string(); }

Json integer(const mpz_class& z) {
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());
}

Json rational(const Rational& q) {
    Json j;
    j["num"] = integer(q.get_num());
    j["den"] = integer(q.get_den());
    j["decimal"] = to_decimal(q);
    return j;
}

std::string show(const Rational& q) { return q.get_str() + " (" + to_decimal(q) + ")"; }

Json dist_json(const Dist& d) {
    Json arr = Json::array();
    for (const auto& [v, w] : d.weights()) {
        Json e;
        e["value"] = v.to_string();
        e["num"] = integer(w.get_num());
        e["den"] = integer(w.get_den());
        e["decimal"] = to_decimal(w);
        arr.push_back(std::move(e));
    }
    return arr;
}

void print_dist(std::ostream& out, const Dist& d, const std::string& indent) {
    for (const auto& [v, w] : d.weights()) out << indent << v.to_string() << " : " << show(w) << "\n";
}

// Output for one program run, collected so structured mode prints one document.
class Session {
public:
    Session(Format f, std::ostream& out) : format_(f), out_(out) {}

    void begin(const std::string& program) {
        doc_ = Json::object();
        doc_["program"] = program;
        doc_["results"] = Json::array();
    }

    void eval(const Definition& def) {
        Dist d = state_of(def);
        if (format_ == Format::Text) {
            out_ << "eval " << def.name << " : " << def.type.to_string() << "\n";
            print_dist(out_, d, "  ");
            return;
        }
        Json r;
        r["query"] = "eval " + def.name;
        r["type"] = def.type.to_string();
        r["distribution"] = dist_json(d);
        doc_["results"].push_back(std::move(r));
    }

    void validity(const Program& prog, const std::string& state, const std::string& pred) {
        Rational v = comet::validity(prog, state, pred);
        std::string q = "validity " + state + " given " + pred;
        if (format_ == Format::Text) {
            out_ << q << "\n  validity : " << show(v) << "\n";
            return;
        }
        Json r;
        r["query"] = q;
        r["validity"] = rational(v);
        doc_["results"].push_back(std::move(r));
    }

    void infer(const Program& prog, const std::string& state, const std::string& pred, int side) {
        Inference inf = comet::infer(prog, state, pred, side);
        std::string q = "infer " + state + " given " + pred + (side ? " marginal " + std::to_string(side) : "");
        if (format_ == Format::Text) {
            out_ << q << "\n";
            out_ << "  validity : " << show(inf.validity) << "\n";
            out_ << "  witness : n = " << inf.witness << "\n";
            out_ << "  assert weights:\n";
            print_dist(out_, inf.asserted.dist(), "    ");
            out_ << "  posterior:\n";
            print_dist(out_, inf.posterior, "    ");
            if (inf.marginal) {
                out_ << "  marginal " << side << ":\n";
                print_dist(out_, *inf.marginal, "    ");
            }
            return;
        }
        Json r;
        r["query"] = q;
        r["validity"] = rational(inf.validity);
        r["witness"] = inf.witness;
        r["assert_weights"] = dist_json(inf.asserted.dist());
        r["posterior"] = dist_json(inf.posterior);
        if (inf.marginal) {
            r["marginal_side"] = side;
            r["marginal"] = dist_json(*inf.marginal);
        }
        doc_["results"].push_back(std::move(r));
    }

    void check(const Program& prog) {
        if (format_ == Format::Text) {
            for (const auto& d : prog.defs) {
                out_ << d.name;
                if (!d.closed()) out_ << "(" << d.params.to_string() << ")";
                out_ << " : " << d.type.to_string() << "\n";
            }
            return;
        }
        Json defs = Json::array();
        for (const auto& d : prog.defs) {
            Json e;
            e["name"] = d.name;
            e["params"] = d.params.to_string();
            e["type"] = d.type.to_string();
            Json ws = Json::array();
            for (const auto& j : d.judgements)
                if (j.kind == JudgementKind::NonZeroDomain) ws.push_back(j.witness);
            e["witnesses"] = ws;
            defs.push_back(std::move(e));
        }
        doc_["definitions"] = std::move(defs);
        Json qs = Json::array();
        for (const auto& q : prog.queries) qs.push_back(q.to_string());
        doc_["queries"] = std::move(qs);
    }

    Json& doc() { return doc_; }

    void flush() {
        if (format_ == Format::Structured) out_ << doc_.dump(2) << "\n";
    }

private:
    Format format_;
    std::ostream& out_;
    Json doc_;
};

const Definition& require(const Program& prog, const std::string& name) {
    const Definition* d = prog.find(name);
    if (!d) throw ElaborationError({}, "unknown definition " + name);
    return *d;
}

// Type-level validity of the file's queries, without evaluating anything.
void check_queries(const Program& prog) {
    for (const auto& q : prog.queries) {
        if (q.kind == Query::Kind::Eval) continue;
        const Definition& s = require(prog, q.state);
        const Definition& p = require(prog, q.pred);
        if (!s.closed()) throw NotClosed(q.state + " has parameters and is not a state");
        if (!p.type.is_two() || predicate_of(p).domain != s.type)
            throw TypeError(TypeErrorKind::Mismatch, "", p.name + " is not a predicate on " + s.type.to_string(), {}, q.span);
        if (q.marginal && !s.type.is_tensor())
            throw TypeError(TypeErrorKind::Mismatch, "", "marginal of " + q.state + " : " + s.type.to_string(), {}, q.span);
    }
}

void run_queries(Session& session, const Program& prog) {
    for (const auto& q : prog.queries) {
        switch (q.kind) {
        case Query::Kind::Eval: session.eval(require(prog, q.state)); break;
        case Query::Kind::Validity: session.validity(prog, q.state, q.pred); break;
        case Query::Kind::Infer: session.infer(prog, q.state, q.pred, q.marginal); break;
        }
    }
}

Json law_json(const LawReport& report) {
    Json j;
    j["seed"] = report.seed;
    Json laws = Json::array();
    for (const auto& r : report.results) {
        Json l;
        l["name"] = r.name;
        l["statement"] = r.statement;
        l["instances"] = r.instances;
        l["vacuous"] = r.vacuous;
        l["failures"] = r.failures;
        if (r.counterexample) {
            Json c;
            Json pieces = Json::object();
            for (const auto& [label, text] : r.counterexample->pieces) pieces[label] = text;
            c["pieces"] = std::move(pieces);
            c["env"] = r.counterexample->env;
            c["detail"] = r.counterexample->detail;
            c["size"] = r.counterexample->size;
            l["counterexample"] = std::move(c);
        }
        laws.push_back(std::move(l));
    }
    j["laws"] = std::move(laws);
    j["failures"] = report.failures();
    return j;
}

struct Failure {
    int code;
    std::string kind;
    std::string message;
    Json extra = Json::object();
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact inference and law checking for COMET programs", "comet"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));

    std::string file, def, state, pred;
    int side = 0;
    GenConfig cfg;

    auto* check = app.add_subcommand("check", "Type-check a program");
    check->add_option("file", file, "Program file")->required();

    auto* eval = app.add_subcommand("eval", "Evaluate a closed definition, or every query of the file");
    eval->add_option("file", file, "Program file")->required();
    eval->add_option("--def", def, "Definition to evaluate");

    auto* infer = app.add_subcommand("infer", "Condition a state on a predicate");
    infer->add_option("file", file, "Program file")->required();
    auto* state_opt = infer->add_option("--state", state, "State definition");
    auto* pred_opt = infer->add_option("--pred", pred, "Predicate definition");
    infer->add_option("--marginal", side, "Marginalize the posterior onto side 1 or 2")->check(CLI::Range(1, 2));
    state_opt->needs(pred_opt);
    pred_opt->needs(state_opt);

    auto* laws = app.add_subcommand("laws", "Run the law suite");
    laws->add_option("--seed", cfg.seed, "Generator seed");
    laws->add_option("--instances", cfg.instances, "Instances per law");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "comet: " << e.what() << "\n";
        return exit_code::parse_error;
    }

    Format fmt = format == "structured" ? Format::Structured : Format::Text;
    std::ostringstream buffer;
    Session session(fmt, buffer);
    std::string name = file.empty() ? "laws" : program_name(file);

    auto fail = [&](const Failure& f) {
        if (fmt == Format::Structured) {
            Json doc;
            doc["program"] = name;
            Json e;
            e["kind"] = f.kind;
            e["message"] = f.message;
            for (const auto& [k, v] : f.extra.items()) e[k] = v;
            doc["error"] = std::move(e);
            out << doc.dump(2) << "\n";
        } else {
            out << buffer.str();
            err << name << ": " << f.message << "\n";
        }
        return f.code;
    };

    try {
        if (laws->parsed()) {
            cfg.validate();
            LawReport report = run_law_suite(cfg);
            if (fmt == Format::Structured) out << law_json(report).dump(2) << "\n";
            else out << report.to_text();
            return report.ok() ? exit_code::ok : exit_code::law_failure;
        }

        Program prog = load_program(read_file(file));
        session.begin(name);
        if (check->parsed()) {
            check_queries(prog);
            session.check(prog);
            for (const auto& d : prog.defs)
                for (const auto& w : d.warnings) err << name << ": warning: " << w << "\n";
        } else if (eval->parsed()) {
            if (def.empty()) run_queries(session, prog);
            else session.eval(require(prog, def));
        } else if (infer->parsed()) {
            if (state.empty()) run_queries(session, prog);
            else session.infer(prog, state, pred, side);
        }
        session.flush();
        out << buffer.str();
        return exit_code::ok;
    } catch (const UsageError& e) {
        return fail({exit_code::parse_error, "UsageError", e.what()});
    } catch (const std::invalid_argument& e) {
        if (dynamic_cast<const NotClosed*>(&e)) return fail({exit_code::not_closed, "NotClosed", e.what()});
        if (dynamic_cast<const NotATensor*>(&e)) return fail({exit_code::type_error, "TypeError", e.what()});
        return fail({exit_code::parse_error, "UsageError", e.what()});
    } catch (const ParseError& e) {
        return fail({exit_code::parse_error, "ParseError", e.what(),
                     Json{{"line", e.span().line}, {"column", e.span().column}}});
    } catch (const TypeError& e) {
        Json extra{{"reason", to_string(e.kind())}, {"rule", e.rule()}};
        if (!e.which().empty()) extra["side_condition"] = e.which();
        return fail({exit_code::type_error, "TypeError", e.what(), extra});
    } catch (const ElaborationError& e) {
        return fail({exit_code::type_error, "ElaborationError", e.what()});
    } catch (const ZeroMass& e) {
        return fail({exit_code::zero_mass, "ZeroMass", e.what()});
    } catch (const std::exception& e) {
        return fail({exit_code::parse_error, "Error", e.what()});
    }
}

}  // namespace comet
