#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diffalg/error.hpp"
#include "diffalg/matrix.hpp"
#include "diffalg/ratfun.hpp"

namespace diffalg::cli {

using Json = nlohmann::ordered_json;

/// Bad flags, missing payload, unknown subcommand.
class UsageError : public Error {
public:
    using Error::Error;
};

RatFun parse_ratfun(const std::string& text);
/// "[e1, e2, ...]"
std::vector<RatFun> parse_list(const std::string& text);
/// "[[a, b], [c, d]]", square
MatrixRF parse_matrix(const std::string& text);

const std::vector<std::string>& subcommands();

struct Query {
    std::string subcommand;
    std::string case_name = "shift";
    std::optional<std::string> q;
    /// a, b, f, g, matrix, coeffs, rhs: raw expression text
    std::map<std::string, std::string> payload;
    std::optional<int> order_bound;
    std::optional<std::int64_t> degree_cap;
    bool multiplicative = false;
};

struct Outcome {
    Json report;
    int exit_code = 0;
};

/// DIFFALG_DEGREE_CAP if set and valid, else the library default.
std::int64_t default_degree_cap();

Query query_from_json(const Json& obj);

/// Never throws: failures come back as an error object with exit code
/// 1 (parse/usage), 2 (degree cap) or 3 (invariant violation).
Outcome run_query(const Query& q);

/// One outcome per input line, in input order. Blank lines are skipped.
std::vector<Outcome> run_batch(std::istream& in, unsigned jobs);

} // namespace diffalg::cli
