#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "cli.hpp"

using namespace diffalg::cli;

int main(int argc, char** argv) {
    CLI::App app{"Differential transcendence and dependence criteria for linear (q-)difference equations over Q(x)"};
    app.require_subcommand(1);

    Query query;
    std::optional<std::string> q_text;
    std::map<std::string, std::string> payload;

    auto add_query_flags = [&](CLI::App* sub) {
        sub->add_option("--case", query.case_name, "shift or q")->check(CLI::IsMember({"shift", "q"}));
        sub->add_option("--q", q_text, "dilation factor for --case q, e.g. 2 or 1/4; |q| != 1");
        for (const char* key : {"a", "b", "f", "g", "matrix", "coeffs", "rhs"})
            sub->add_option_function<std::string>(std::string("--") + key,
                                                  [&payload, key](const std::string& v) { payload[key] = v; });
        sub->add_option("--order-bound", query.order_bound, "telescoper order bound (default 2)");
        sub->add_option("--degree-cap", query.degree_cap, "solver degree cap (default $DIFFALG_DEGREE_CAP or 200)");
        sub->add_flag("--multiplicative", query.multiplicative, "telescope: test the d(b)/b instead");
    };
    for (const auto& name : subcommands()) add_query_flags(app.add_subcommand(name));

    std::string batch_path;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* batch = app.add_subcommand("batch", "newline-delimited JSON queries, one report per line");
    batch->add_option("file", batch_path, "query file, - for stdin")->required();
    batch->add_option("--jobs", jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cout << Json{{"error", {{"kind", "usage_error"}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    }

    if (batch->parsed()) {
        std::ifstream file;
        std::istream* in = &std::cin;
        if (batch_path != "-") {
            file.open(batch_path);
            if (!file) {
                std::cerr << "cannot open " << batch_path << "\n";
                std::cout << Json{{"error", {{"kind", "usage_error"}, {"message", "cannot open " + batch_path}}}}.dump()
                          << "\n";
                return 1;
            }
            in = &file;
        }
        int code = 0;
        for (const auto& o : run_batch(*in, jobs)) {
            std::cout << o.report.dump() << "\n";
            code = std::max(code, o.exit_code);
        }
        return code;
    }

    query.subcommand = app.get_subcommands().front()->get_name();
    query.q = q_text;
    query.payload = payload;
    const Outcome o = run_query(query);
    std::cout << o.report.dump() << "\n";
    if (o.exit_code != 0) std::cerr << o.report["error"]["message"].get<std::string>() << "\n";
    return o.exit_code;
}
