// chow_cli.cpp
// Command-line front end: betti tables, the 6x6 intersection table, its
// determinant (symbolic or swept over n), the extremal 1-point invariants,
// and a script evaluator. `--format json` carries every non-trivial number
// as a string to preserve exactness.
#include "chow/dsl.hpp"
#include "chow/pipeline.hpp"
#include "chow/series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using nlohmann::json;

namespace {

struct Options {
    std::string format = "text";
    int n = 0;
    bool has_n = false;
    std::string n_range;
    int d = 1;
    std::string script;
};

int run_betti(const Options& opt) {
    chow::PoincareData p = chow::poincare(opt.n);
    if (opt.format == "json") {
        json j;
        j["n"] = p.n;
        json arr = json::array();
        for (const auto& b : p.betti) arr.push_back(b.convert_to<long long>());
        j["betti"] = arr;
        for (size_t i = 0; i < p.betti.size(); ++i)
            j["b" + std::to_string(i)] = p.betti[i].convert_to<long long>();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "betti numbers of M(" << p.n << "):\n";
        for (size_t i = 0; i < p.betti.size(); ++i)
            std::cout << "b" << i << " = " << p.betti[i].str() << "\n";
    }
    return 0;
}

int run_table(const Options& opt) {
    chow::GwPipeline pipe;
    auto table = pipe.intersection_table();
    std::array<std::array<std::string, 6>, 6> cells;
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) {
            if (opt.has_n) {
                std::map<std::string, chow::Rational> b{{"n", chow::Rational(opt.n)}};
                cells[i][j] = table.entries[i][j].eval(b).str();
            } else {
                cells[i][j] = table.entries[i][j].str();
            }
        }
    if (opt.format == "json") {
        json j;
        if (opt.has_n)
            j["n"] = opt.n;
        else
            j["n"] = "symbolic";
        j["rows"] = chow::IntersectionTable::row_names();
        j["cols"] = chow::IntersectionTable::col_names();
        json entries = json::array();
        for (size_t i = 0; i < 6; ++i) {
            json row = json::array();
            for (size_t j2 = 0; j2 < 6; ++j2) row.push_back(cells[i][j2]);
            entries.push_back(row);
        }
        j["entries"] = entries;
        std::cout << j.dump() << "\n";
    } else {
        std::array<size_t, 6> width;
        for (size_t j = 0; j < 6; ++j) {
            width[j] = std::string(chow::IntersectionTable::col_names()[j]).size();
            for (size_t i = 0; i < 6; ++i)
                width[j] = std::max(width[j], cells[i][j].size());
        }
        std::cout << std::left << std::setw(5) << "";
        for (size_t j = 0; j < 6; ++j)
            std::cout << " " << std::setw(static_cast<int>(width[j]))
                      << chow::IntersectionTable::col_names()[j];
        std::cout << "\n";
        for (size_t i = 0; i < 6; ++i) {
            std::cout << std::left << std::setw(5)
                      << chow::IntersectionTable::row_names()[i];
            for (size_t j = 0; j < 6; ++j)
                std::cout << " " << std::setw(static_cast<int>(width[j])) << cells[i][j];
            std::cout << "\n";
        }
    }
    return 0;
}

bool parse_range(const std::string& s, int& a, int& b) {
    auto pos = s.find("..");
    if (pos == std::string::npos) return false;
    try {
        a = std::stoi(s.substr(0, pos));
        b = std::stoi(s.substr(pos + 2));
    } catch (...) {
        return false;
    }
    return a <= b;
}

int run_det(const Options& opt) {
    chow::GwPipeline pipe;
    std::vector<std::pair<int, std::string>> values; // (n, det); n=0 => symbolic
    if (!opt.n_range.empty()) {
        int a = 0, b = 0;
        if (!parse_range(opt.n_range, a, b) || a < 3) {
            std::cerr << "error: --n-range must be A..B with 3 <= A <= B\n";
            return 2;
        }
        for (int n = a; n <= b; ++n)
            values.emplace_back(n, pipe.basis_determinant_at(n).str());
    } else if (opt.has_n) {
        values.emplace_back(opt.n, pipe.basis_determinant_at(opt.n).str());
    } else {
        values.emplace_back(0, pipe.basis_determinant_symbolic().str());
    }
    if (opt.format == "json") {
        json arr = json::array();
        for (const auto& [n, v] : values) {
            json j;
            if (n == 0)
                j["n"] = "symbolic";
            else
                j["n"] = n;
            j["det"] = v;
            arr.push_back(j);
        }
        std::cout << (arr.size() == 1 ? arr[0].dump() : arr.dump()) << "\n";
    } else {
        for (const auto& [n, v] : values) {
            if (n == 0)
                std::cout << "det = " << v << "\n";
            else
                std::cout << "det(" << n << ") = " << v << "\n";
        }
    }
    return 0;
}

int run_invariants(const Options& opt) {
    chow::GwPipeline pipe;
    json arr = json::array();
    for (int i = 1; i <= 6; ++i) {
        chow::InvariantResult r = pipe.invariant(i, opt.d);
        const char* prov = r.provenance == chow::Provenance::computed
                               ? "computed"
                               : "vanishing_by_localization";
        if (opt.format == "json") {
            json j;
            j["i"] = r.i;
            j["d"] = r.d;
            j["value"] = r.value.str();
            j["provenance"] = prov;
            arr.push_back(j);
        } else {
            std::cout << "Xi" << i << ": " << r.value.str();
            if (r.provenance != chow::Provenance::computed)
                std::cout << " [" << prov << "]";
            std::cout << "\n";
        }
    }
    if (opt.format == "json") std::cout << arr.dump() << "\n";
    return 0;
}

int run_eval(const Options& opt) {
    std::ifstream in(opt.script);
    if (!in) {
        std::cerr << "error: cannot open script: " << opt.script << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        chow::dsl::Script script = chow::dsl::parse(buf.str());
        chow::dsl::EvalResult res = chow::dsl::eval(script);
        if (opt.format == "json") {
            json j;
            j["output"] = res.output;
            j["assert_failures"] = res.assert_failures;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << res.output;
        }
        return res.assert_failures == 0 ? 0 : 1;
    } catch (const chow::dsl::DslError& e) {
        std::cerr << "error: " << opt.script << ":" << e.diag.line << ":"
                  << e.diag.col << ": " << e.diag.message;
        if (!e.diag.snippet.empty()) std::cerr << " near '" << e.diag.snippet << "'";
        std::cerr << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact intersection-theory calculator for the rank-2 moduli spaces"};
    app.require_subcommand(1);
    Options opt;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* betti = app.add_subcommand("betti", "Betti numbers of M(n)");
    betti->add_option("--n", opt.n, "Moduli index (>= 1)")->required();
    add_format(betti);

    CLI::App* table = app.add_subcommand("table", "6x6 intersection table");
    table->add_option("--n", opt.n, "Evaluate at integer n (>= 3)");
    add_format(table);

    CLI::App* det = app.add_subcommand("det", "Determinant of the table");
    det->add_option("--n", opt.n, "Evaluate at integer n (>= 3)");
    det->add_option("--n-range", opt.n_range, "Sweep A..B (inclusive, A >= 3)");
    add_format(det);

    CLI::App* inv = app.add_subcommand("invariants", "Extremal 1-point invariants");
    inv->add_option("--d", opt.d, "Multiple-cover degree (>= 1)")->required();
    inv->add_option("--n", opt.n, "Moduli index (>= 3), values are n-independent");
    add_format(inv);

    CLI::App* ev = app.add_subcommand("eval", "Evaluate a script");
    ev->add_option("--script", opt.script, "Script path")->required();
    add_format(ev);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    opt.has_n = (betti->count("--n") || table->count("--n") || det->count("--n") ||
                 inv->count("--n")) > 0;

    try {
        if (*betti) {
            if (opt.n < 1) {
                std::cerr << "error: betti needs --n >= 1\n";
                return 2;
            }
            return run_betti(opt);
        }
        if (*table) {
            if (opt.has_n && opt.n < 3) {
                std::cerr << "error: table needs --n >= 3\n";
                return 2;
            }
            return run_table(opt);
        }
        if (*det) {
            if (opt.has_n && opt.n < 3) {
                std::cerr << "error: det needs --n >= 3\n";
                return 2;
            }
            if (opt.has_n && !opt.n_range.empty()) {
                std::cerr << "error: use either --n or --n-range\n";
                return 2;
            }
            return run_det(opt);
        }
        if (*inv) {
            if (opt.d < 1) {
                std::cerr << "error: invariants needs --d >= 1\n";
                return 2;
            }
            if (opt.has_n && opt.n < 3) {
                std::cerr << "error: invariants needs --n >= 3\n";
                return 2;
            }
            return run_invariants(opt);
        }
        if (*ev) return run_eval(opt);
    } catch (const chow::error& e) {
        std::cerr << "assertion failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
