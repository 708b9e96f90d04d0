// Command-line front end: parses recurrences, matrices, and sampling
// parameters, dispatches to the library, and emits human-readable or JSON
// reports. Exit codes: 0 PASS, 1 FAIL, 2 UNKNOWN, 3 usage or hypothesis error.

#include <CLI11.hpp>
#include <json.hpp>

#include "realizable/realizable.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace realizable;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<bigint> parse_int_list(const std::string& text, const std::string& field) {
    std::vector<bigint> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(bigint(item));
        } catch (const std::exception&) {
            throw usage_error(field + ": '" + item + "' is not an integer");
        }
    }
    if (out.empty()) throw usage_error(field + ": empty list");
    return out;
}

std::uint64_t digit_cap_from_env() {
    if (const char* cap = std::getenv("REALIZE_DIGIT_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(cap, &end, 10);
        if (end == cap || *end != '\0' || v == 0) {
            throw usage_error("REALIZE_DIGIT_CAP: '" + std::string(cap) + "' is not a positive integer");
        }
        return v;
    }
    return recurrence::default_digit_cap_bits();
}

struct RecurrenceArgs {
    std::string coeffs, initials, file;
    std::string multiplier = "1";
    std::uint64_t exponent = 1;
    bool multiplier_set = false, exponent_set = false;

    void attach(CLI::App* cmd, bool with_sampling) {
        cmd->add_option("--coeffs", coeffs, "recurrence coefficients a_1,...,a_k");
        cmd->add_option("--initials", initials, "initial terms u_1,...,u_k");
        cmd->add_option("--file", file, "recurrence JSON file {coeffs, initials[, multiplier, exponent]}");
        if (with_sampling) {
            cmd->add_option("--multiplier", multiplier, "constant M in a_n = M u_{n^s}")->trigger_on_parse();
            cmd->add_option("--exponent", exponent, "exponent s in a_n = M u_{n^s}");
        }
    }

    recurrence::LinearRecurrence recurrence_from_flags(CLI::App* cmd) {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw usage_error("file: cannot open '" + file + "'");
            json doc;
            try {
                doc = json::parse(in);
            } catch (const json::parse_error& e) {
                throw usage_error("file: " + std::string(e.what()));
            }
            auto list = [&](const char* field) {
                if (!doc.contains(field) || !doc[field].is_array() || doc[field].empty()) {
                    throw usage_error("file: missing or invalid field '" + std::string(field) + "'");
                }
                std::vector<bigint> out;
                for (const auto& x : doc[field]) {
                    if (x.is_number_integer()) {
                        out.push_back(bigint(x.get<std::int64_t>()));
                    } else if (x.is_string()) {
                        try {
                            out.push_back(bigint(x.get<std::string>()));
                        } catch (const std::exception&) {
                            throw usage_error("file: field '" + std::string(field) + "' has a non-integer entry");
                        }
                    } else {
                        throw usage_error("file: field '" + std::string(field) + "' has a non-integer entry");
                    }
                }
                return out;
            };
            auto cs = list("coeffs");
            auto us = list("initials");
            if (doc.contains("multiplier") && cmd->count("--multiplier") == 0) {
                multiplier = doc["multiplier"].is_string() ? doc["multiplier"].get<std::string>()
                                                           : std::to_string(doc["multiplier"].get<std::int64_t>());
            }
            if (doc.contains("exponent") && cmd->count("--exponent") == 0) {
                if (!doc["exponent"].is_number_unsigned() || doc["exponent"].get<std::uint64_t>() < 1) {
                    throw usage_error("file: field 'exponent' must be a positive integer");
                }
                exponent = doc["exponent"].get<std::uint64_t>();
            }
            try {
                return recurrence::make_recurrence(cs, us);
            } catch (const std::invalid_argument& e) {
                throw usage_error("file: " + std::string(e.what()));
            }
        }
        if (coeffs.empty() || initials.empty()) {
            throw usage_error("either --file or both --coeffs and --initials are required");
        }
        try {
            return recurrence::make_recurrence(parse_int_list(coeffs, "coeffs"),
                                               parse_int_list(initials, "initials"));
        } catch (const std::invalid_argument& e) {
            throw usage_error(e.what());
        }
    }

    realize::SampledSequence sampled(CLI::App* cmd) {
        auto rec = recurrence_from_flags(cmd);
        bigint m;
        try {
            m = bigint(multiplier);
        } catch (const std::exception&) {
            throw usage_error("multiplier: '" + multiplier + "' is not an integer");
        }
        if (m == 0) throw usage_error("multiplier: must be nonzero");
        if (exponent < 1) throw usage_error("exponent: must be >= 1");
        return {std::move(rec), m, exponent};
    }
};

const char* status_name(realize::Status s) {
    switch (s) {
        case realize::Status::PASS: return "PASS";
        case realize::Status::FAIL: return "FAIL";
        default: return "UNKNOWN";
    }
}

int status_exit(realize::Status s) {
    switch (s) {
        case realize::Status::PASS: return 0;
        case realize::Status::FAIL: return 1;
        default: return 2;
    }
}

json verdict_json(const realize::Verdict& v) {
    json out;
    out["status"] = status_name(v.status);
    if (v.first_issue) {
        out["first_issue"] = {{"n", v.first_issue->n},
                              {"condition", v.first_issue->condition == realize::Condition::D ? "D" : "S"},
                              {"detail", v.first_issue->detail}};
    } else {
        out["first_issue"] = nullptr;
    }
    out["checked_up_to"] = v.checked_up_to;
    return out;
}

json params_json(const realize::ThmParams& p) {
    json out;
    out["delta_F"] = p.delta_F.str();
    out["delta_K"] = p.delta_K.str();
    out["delta_K_supplied"] = p.delta_K_supplied;
    out["galois"] = polyalg::galois_tag_name(p.galois.tag);
    out["galois_order"] = p.galois.order ? json(*p.galois.order) : json(nullptr);
    out["galois_exponent"] = p.galois.exponent ? json(*p.galois.exponent) : json(nullptr);
    out["M"] = p.M.str();
    out["s_min"] = p.s_min;
    out["n0"] = p.n0 ? json(*p.n0) : json(nullptr);
    out["n1"] = p.n1 ? json(*p.n1) : json(nullptr);
    out["ell0"] = p.ell0 ? json(*p.ell0) : json(nullptr);
    return out;
}

struct Emitter {
    bool machine = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    int finish(json report, int code, const std::string& human) {
        if (machine) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            report["version"] = version;
            report["timing_ms"] = ms;
            std::cout << report.dump(2) << "\n";
        } else {
            std::cout << human;
        }
        return code;
    }
};

std::string describe_verdict(const realize::Verdict& v) {
    std::ostringstream os;
    os << status_name(v.status) << " (checked n <= " << v.checked_up_to << ")\n";
    if (v.first_issue) {
        os << "first issue: n = " << v.first_issue->n << ", condition ("
           << (v.first_issue->condition == realize::Condition::D ? "D" : "S") << "): "
           << v.first_issue->detail << "\n";
    }
    return os.str();
}

std::string describe_params(const realize::ThmParams& p) {
    std::ostringstream os;
    os << "delta_F = " << p.delta_F.str() << "\n";
    os << "delta_K = " << p.delta_K.str() << (p.delta_K_supplied ? " (supplied)" : "") << "\n";
    os << "galois  = " << polyalg::galois_tag_name(p.galois.tag);
    if (p.galois.order) os << " (order " << *p.galois.order << ", exponent " << *p.galois.exponent << ")";
    os << "\n";
    os << "M       = " << p.M.str() << "\n";
    os << "s_min   = " << p.s_min << "\n";
    if (p.n0) os << "n0      = " << *p.n0 << "\n";
    if (p.n1) os << "n1      = " << *p.n1 << "\n";
    if (p.ell0) os << "ell0    = " << *p.ell0 << "\n";
    return os.str();
}

realize::SignStrategy parse_strategy(const std::string& s) {
    if (s == "exact") return realize::SignStrategy::exact;
    if (s == "bound") return realize::SignStrategy::bound;
    if (s == "auto") return realize::SignStrategy::automatic;
    throw usage_error("strategy: expected exact, bound, or auto");
}

witness::TransitionMatrix parse_matrix(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error&) {
        throw usage_error("matrix: not a bracketed integer matrix");
    }
    if (!doc.is_array() || doc.empty()) throw usage_error("matrix: expected a nonempty array of rows");
    std::vector<std::vector<bigint>> rows;
    for (const auto& r : doc) {
        if (!r.is_array()) throw usage_error("matrix: each row must be an array");
        std::vector<bigint> row;
        for (const auto& x : r) {
            if (!x.is_number_integer()) throw usage_error("matrix: entries must be integers");
            row.push_back(bigint(x.get<std::int64_t>()));
        }
        rows.push_back(std::move(row));
    }
    try {
        return witness::TransitionMatrix::from_rows(std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw usage_error("matrix: " + std::string(e.what()));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"realizability checks for scaled polynomial-index subsequences of linear recurrences"};
    app.require_subcommand(1);
    Emitter emit;
    app.add_flag("--json", emit.machine, "machine-readable report on stdout");

    // shared option storage
    RecurrenceArgs rec_args;
    std::uint64_t max_n = 100, max_m = 1000, k = 2, ell = 1;
    unsigned threads = 1;
    std::string strategy = "auto", matrix_text, csv_file, delta_k_text, terms_text;
    std::string p_text = "0", q_text = "0";
    bool conservative = false, run_check = false;

    auto* c_check = app.add_subcommand("check", "scan conditions (D) and (S) for a_n = M u_{n^s}");
    rec_args.attach(c_check, true);
    c_check->add_option("--max-n", max_n, "scan n = 1..max-n")->required();
    c_check->add_option("--strategy", strategy, "sign strategy: exact, bound, auto");
    c_check->add_option("--parallel", threads, "worker threads");

    auto* c_params = app.add_subcommand("params", "derive sufficiency parameters from the recurrence");
    rec_args.attach(c_params, false);
    c_params->add_option("--delta-k", delta_k_text, "splitting-field discriminant override");
    c_params->add_flag("--conservative", conservative, "force the k! fallback exponent");

    auto* c_orbits = app.add_subcommand("orbits", "orbit census O_n of a_n = M u_{n^s}");
    rec_args.attach(c_orbits, true);
    c_orbits->add_option("--max-n", max_n, "census for n = 1..max-n")->required();
    c_orbits->add_option("--csv", csv_file, "write census as CSV (header n,O_n) to this file");

    auto* c_sft = app.add_subcommand("sft", "trace sequence of a nonnegative transition matrix");
    c_sft->add_option("--matrix", matrix_text, "rows, e.g. \"[[1,1],[1,0]]\"")->required();
    c_sft->add_option("--max-n", max_n, "terms n = 1..max-n")->required();
    c_sft->add_flag("--check", run_check, "also run the realizability scan on the terms");

    auto* c_thm2 = app.add_subcommand("thm2", "k-generalized Fibonacci driver: M = |disc|, s = k! * ell");
    c_thm2->add_option("--k", k, "recurrence order >= 2")->required();
    c_thm2->add_option("--ell", ell, "exponent multiple");
    c_thm2->add_option("--max-n", max_n, "scan n = 1..max-n")->required();
    c_thm2->add_option("--parallel", threads, "worker threads");

    auto* c_thm3 = app.add_subcommand("thm3", "condition (D) for ((P^2-4Q) u_{n^2}), u_0 = 0, u_1 = 1");
    c_thm3->add_option("--p", p_text, "P")->required();
    c_thm3->add_option("--q", q_text, "Q")->required();
    c_thm3->add_option("--max-n", max_n, "scan n = 1..max-n")->required();
    c_thm3->add_option("--parallel", threads, "worker threads");

    auto* c_mult = app.add_subcommand("multiplier", "least M with (M u_{n^s}) passing (D) up to max-n");
    rec_args.attach(c_mult, true);
    c_mult->add_option("--max-n", max_n, "check n = 1..max-n")->required();
    c_mult->add_option("--max-m", max_m, "search M = 1..max-m");

    auto* c_minpoly = app.add_subcommand("minpoly", "minimal polynomial of a finite term list");
    c_minpoly->add_option("--terms", terms_text, "sequence terms a_1,a_2,...")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        std::uint64_t cap = digit_cap_from_env();

        if (*c_check) {
            auto seq = rec_args.sampled(c_check);
            realize::ScanOptions opts;
            opts.sign = parse_strategy(strategy);
            opts.digit_cap_bits = cap;
            opts.threads = threads;
            auto v = realize::check_realizable(seq, max_n, opts);
            json rep;
            rep["command"] = "check";
            rep["coeffs"] = json::array();
            for (const auto& c : seq.base.coeffs) rep["coeffs"].push_back(c.str());
            rep["initials"] = json::array();
            for (const auto& u : seq.base.initials) rep["initials"].push_back(u.str());
            rep["multiplier"] = seq.multiplier.str();
            rep["exponent"] = seq.exponent;
            rep["verdict"] = verdict_json(v);
            return emit.finish(rep, status_exit(v.status), describe_verdict(v));
        }

        if (*c_params) {
            auto rec = rec_args.recurrence_from_flags(c_params);
            std::optional<bigint> override;
            if (!delta_k_text.empty()) {
                try {
                    override = bigint(delta_k_text);
                } catch (const std::exception&) {
                    throw usage_error("delta-k: '" + delta_k_text + "' is not an integer");
                }
            }
            auto p = realize::derive_params(rec, override, conservative);
            json rep;
            rep["command"] = "params";
            rep["params"] = params_json(p);
            return emit.finish(rep, 0, describe_params(p));
        }

        if (*c_orbits) {
            auto seq = rec_args.sampled(c_orbits);
            auto census = realize::orbit_census(
                [&](std::uint64_t n) { return seq.term(n, cap); }, max_n);
            std::ostringstream csv;
            csv << "n,O_n\n";
            for (const auto& [n, o] : census.counts) csv << n << "," << o.str() << "\n";
            if (!csv_file.empty()) {
                std::ofstream out(csv_file);
                if (!out) throw usage_error("csv: cannot open '" + csv_file + "' for writing");
                out << csv.str();
            }
            json rep;
            rep["command"] = "orbits";
            rep["census"] = json::array();
            for (const auto& [n, o] : census.counts) rep["census"].push_back({{"n", n}, {"O_n", o.str()}});
            return emit.finish(rep, 0, csv.str());
        }

        if (*c_sft) {
            auto m = parse_matrix(matrix_text);
            auto counts = witness::sft_counts(m, max_n);
            json rep;
            rep["command"] = "sft";
            rep["counts"] = json::array();
            for (const auto& c : counts) rep["counts"].push_back(c.str());
            std::ostringstream os;
            for (std::size_t i = 0; i < counts.size(); ++i) os << (i ? "," : "") << counts[i].str();
            os << "\n";
            int code = 0;
            if (run_check) {
                auto v = realize::check_realizable_terms(counts, max_n);
                rep["verdict"] = verdict_json(v);
                os << describe_verdict(v);
                code = status_exit(v.status);
            }
            return emit.finish(rep, code, os.str());
        }

        if (*c_thm2) {
            realize::ScanOptions opts;
            opts.digit_cap_bits = cap;
            opts.threads = threads;
            auto v = realize::verify_theorem2(static_cast<unsigned>(k), ell, max_n, opts);
            json rep;
            rep["command"] = "thm2";
            rep["k"] = k;
            rep["ell"] = ell;
            rep["verdict"] = verdict_json(v);
            return emit.finish(rep, status_exit(v.status), describe_verdict(v));
        }

        if (*c_thm3) {
            bigint P, Q;
            try {
                P = bigint(p_text);
                Q = bigint(q_text);
            } catch (const std::exception&) {
                throw usage_error("p/q: expected integers");
            }
            auto r = realize::verify_theorem3(P, Q, max_n, threads);
            json rep;
            rep["command"] = "thm3";
            rep["P"] = P.str();
            rep["Q"] = Q.str();
            rep["M"] = r.M.str();
            rep["verdict"] = verdict_json(r.verdict);
            std::ostringstream os;
            os << "M = " << r.M.str() << "\n" << describe_verdict(r.verdict);
            int code = status_exit(r.verdict.status);
            if (r.sharper) {
                rep["sharper_verdict"] = verdict_json(*r.sharper);
                os << "sharper |P| multiplier: " << describe_verdict(*r.sharper);
                code = std::max(code, status_exit(r.sharper->status));
            }
            return emit.finish(rep, code, os.str());
        }

        if (*c_mult) {
            auto seq = rec_args.sampled(c_mult);
            auto found = realize::minimal_multiplier(
                [&](std::uint64_t n) { return recurrence::term_exact(seq.base, seq.index(n), cap); },
                max_n, max_m);
            json rep;
            rep["command"] = "multiplier";
            rep["minimal_multiplier"] = found ? json(*found) : json(nullptr);
            std::ostringstream os;
            if (found) {
                os << "minimal multiplier: " << *found << "\n";
            } else {
                os << "no multiplier <= " << max_m << " passes (D) up to n = " << max_n << "\n";
            }
            return emit.finish(rep, found ? 0 : 1, os.str());
        }

        if (*c_minpoly) {
            auto terms = parse_int_list(terms_text, "terms");
            auto mp = recurrence::minimal_polynomial(terms);
            json rep;
            rep["command"] = "minpoly";
            rep["minimal_polynomial"] = json::array();
            for (const auto& c : mp.c) rep["minimal_polynomial"].push_back(c.str());
            return emit.finish(rep, 0, mp.str() + "\n");
        }

        throw usage_error("no subcommand");
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hypothesis_violation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const needs_override_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const needs_more_data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const census_undefined_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cost_cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
