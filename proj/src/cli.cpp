#include "circpow/cli.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "circpow/compositions.hpp"
#include "circpow/formal.hpp"
#include "circpow/matrix.hpp"
#include "circpow/rcirculant.hpp"
#include "circpow/ring.hpp"
#include "circpow/semicirculant.hpp"

namespace circpow {
namespace {

using json = nlohmann::ordered_json;

// Thrown for anything the user got wrong; the message names the field.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Int parse_decimal(const std::string& text, const std::string& field) {
    const bool negative = !text.empty() && text[0] == '-';
    const std::size_t start = !text.empty() && (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size())
        throw ValidationError(field + ": \"" + text + "\" is not an integer");
    for (std::size_t i = start; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw ValidationError(field + ": \"" + text + "\" is not an integer");
    Int value{text.substr(start)};
    return negative ? -value : value;
}

std::uint64_t parse_u64(const std::string& text, const std::string& field) {
    Int value = parse_decimal(text, field);
    if (value < 0 || value > std::numeric_limits<std::uint64_t>::max())
        throw ValidationError(field + ": \"" + text + "\" is out of range");
    return static_cast<std::uint64_t>(value);
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(current);
    return parts;
}

std::vector<Int> parse_int_list(const std::string& text, const std::string& field) {
    std::vector<Int> values;
    for (const std::string& part : split_csv(text)) values.push_back(parse_decimal(part, field));
    return values;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text, const std::string& field) {
    std::vector<std::uint64_t> values;
    for (const std::string& part : split_csv(text)) values.push_back(parse_u64(part, field));
    return values;
}

template <ring_descriptor R>
std::vector<typename R::element> map_row(const R& ring, const std::vector<Int>& row) {
    std::vector<typename R::element> out;
    out.reserve(row.size());
    for (const Int& v : row) out.push_back(ring.from_integer(v));
    return out;
}

template <ring_descriptor R>
std::string format_vector(const R& ring, const std::vector<typename R::element>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) out += ",";
        out += ring.to_string(values[i]);
    }
    out += "]";
    return out;
}

template <ring_descriptor R>
std::string format_rcirculant(const R& ring, const RCirculant<R>& c) {
    std::string out = "circ_{" + std::to_string(c.n) + "," + ring.to_string(c.r) + "}(";
    for (std::size_t i = 0; i < c.row.size(); ++i) {
        if (i != 0) out += ",";
        out += ring.to_string(c.row[i]);
    }
    out += ")";
    return out;
}

template <ring_descriptor R>
json vector_json(const R& ring, const std::vector<typename R::element>& values) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back(ring.to_string(v));
    return arr;
}

// ---------------------------------------------------------------------------
// power

template <ring_descriptor R>
int do_power(const R& ring, const JobSpec& job, std::ostream& out) {
    if (job.kind == MatrixKind::semicirculant) {
        SemicirculantSpec<R> spec(ring, map_row(ring, job.row));
        PowerResult<R> result = power(spec, job.k);
        if (job.format == OutputFormat::text) {
            out << format_vector(ring, result.row) << "\n";
        } else {
            json j;
            j["command"] = "power";
            j["kind"] = "semicirculant";
            j["ring"] = ring.name();
            j["k"] = std::to_string(job.k);
            j["order"] = spec.order();
            j["row"] = vector_json(ring, result.row);
            out << j.dump() << "\n";
        }
        return 0;
    }

    RCirculant<R> c(ring, ring.from_integer(job.r), map_row(ring, job.row));
    RCirculant<R> result = power_via_fold(c, job.k);
    if (job.format == OutputFormat::text) {
        out << format_rcirculant(ring, result) << "\n";
    } else {
        json j;
        j["command"] = "power";
        j["kind"] = "rcirculant";
        j["ring"] = ring.name();
        j["k"] = std::to_string(job.k);
        j["n"] = result.n;
        j["r"] = ring.to_string(result.r);
        j["strips"] = vector_json(ring, result.row);
        out << j.dump() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// formal

template <ring_descriptor R>
int do_formal(const R& ring, const JobSpec& job, std::ostream& out) {
    std::vector<typename R::element> row = map_row(ring, job.row);
    std::span<const typename R::element> tail(row.data() + 1, row.size() - 1);
    FormalSequence<R> seq = build_sequence(ring, row[0], tail, row.size() - 1);

    if (job.format == OutputFormat::text) {
        out << "a0 = " << ring.to_string(seq.a0) << "\n";
        for (std::size_t m = 0; m < seq.entries.size(); ++m)
            out << "a[" << m << "](k) = " << render(ring, seq.entries[m]) << "\n";
        return 0;
    }

    json entries = json::array();
    for (std::size_t m = 0; m < seq.entries.size(); ++m) {
        json terms = json::array();
        for (auto it = seq.entries[m].terms.rbegin(); it != seq.entries[m].terms.rend(); ++it)
            terms.push_back(json{{"p", it->first}, {"coeff", ring.to_string(it->second)}});
        entries.push_back(json{{"m", m},
                               {"terms", std::move(terms)},
                               {"rendered", render(ring, seq.entries[m])}});
    }
    json j;
    j["command"] = "formal";
    j["kind"] = "semicirculant";
    j["ring"] = ring.name();
    j["a0"] = ring.to_string(seq.a0);
    j["entries"] = std::move(entries);
    out << j.dump() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct CheckOutcome {
    std::string oracle;
    std::string status;  // "agree" | "mismatch" | "not applicable"
    std::string position;
    std::string engine_value;
    std::string oracle_value;
};

template <ring_descriptor R>
CheckOutcome compare_rows(const R& ring, const std::string& oracle,
                          const std::vector<typename R::element>& engine,
                          const std::vector<typename R::element>& reference) {
    for (std::size_t m = 0; m < engine.size(); ++m) {
        if (!ring.equals(engine[m], reference[m])) {
            return {oracle, "mismatch", std::to_string(m), ring.to_string(engine[m]),
                    ring.to_string(reference[m])};
        }
    }
    return {oracle, "agree", "", "", ""};
}

template <ring_descriptor R>
CheckOutcome compare_dense(const R& ring, const std::string& oracle, const SquareMatrix<R>& engine,
                           const SquareMatrix<R>& reference) {
    for (std::size_t i = 0; i < engine.order(); ++i) {
        for (std::size_t j = 0; j < engine.order(); ++j) {
            if (!ring.equals(engine.at(i, j), reference.at(i, j))) {
                return {oracle, "mismatch", "(" + std::to_string(i) + "," + std::to_string(j) + ")",
                        ring.to_string(engine.at(i, j)), ring.to_string(reference.at(i, j))};
            }
        }
    }
    return {oracle, "agree", "", "", ""};
}

template <ring_descriptor R>
std::vector<CheckOutcome> verify_semicirculant(const R& ring, const JobSpec& job) {
    SemicirculantSpec<R> spec(ring, map_row(ring, job.row));
    PowerResult<R> engine = power(spec, job.k);
    std::vector<CheckOutcome> checks;

    checks.push_back(
        compare_rows(ring, "naive_power", engine.row, naive_power(spec, job.k).row));
    checks.push_back(compare_rows(ring, "serial_engine", engine.row,
                                  power(spec, job.k, Execution::serial).row));

    if (is_zero(ring, spec.row[0]))
        checks.push_back(
            compare_rows(ring, "shifted_power", engine.row, shifted_power(spec, job.k).row));
    else
        checks.push_back({"shifted_power", "not applicable", "", "", ""});

    if (auto division = division_recursion_power(spec, job.k))
        checks.push_back(
            compare_rows(ring, "division_recursion", engine.row, division->row));
    else
        checks.push_back({"division_recursion", "not applicable", "", "", ""});
    return checks;
}

template <ring_descriptor R>
std::vector<CheckOutcome> verify_rcirculant(const R& ring, const JobSpec& job) {
    RCirculant<R> c(ring, ring.from_integer(job.r), map_row(ring, job.row));
    RCirculant<R> engine = power_via_fold(c, job.k);
    std::vector<CheckOutcome> checks;

    checks.push_back(compare_dense(ring, "naive_rc_power", to_dense(engine),
                                   naive_rc_power(c, job.k)));
    checks.push_back(compare_rows(ring, "serial_engine", engine.row,
                                  power_via_fold(c, job.k, Execution::serial).row));

    // The two-strip closed form applies when at most two strips are nonzero
    // (and they are not the last strip alone).
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < c.row.size(); ++i)
        if (!is_zero(ring, c.row[i])) support.push_back(i);
    if (support.size() == 2 || (support.size() == 1 && support[0] + 1 < c.n)) {
        const std::uint64_t p = support.empty() ? 0 : support[0];
        const std::uint64_t q = support.size() == 2 ? support[1] : p + 1;
        const auto a = support.empty() ? ring.zero() : c.row[support[0]];
        const auto b = support.size() == 2 ? c.row[support[1]] : ring.zero();
        checks.push_back(compare_rows(
            ring, "two_strip_power", engine.row,
            two_strip_power(ring, c.n, c.r, p, q, a, b, job.k).row));
    } else {
        checks.push_back({"two_strip_power", "not applicable", "", "", ""});
    }
    return checks;
}

int report_checks(const JobSpec& job, const std::vector<CheckOutcome>& checks,
                  std::ostream& out) {
    bool ok = true;
    for (const CheckOutcome& c : checks)
        if (c.status == "mismatch") ok = false;

    if (job.format == OutputFormat::text) {
        for (const CheckOutcome& c : checks) {
            if (c.status == "mismatch")
                out << c.oracle << ": MISMATCH at " << c.position << ": engine=" << c.engine_value
                    << " oracle=" << c.oracle_value << "\n";
            else
                out << c.oracle << ": " << c.status << "\n";
        }
        out << (ok ? "OK" : "MISMATCH") << "\n";
    } else {
        json arr = json::array();
        for (const CheckOutcome& c : checks) {
            json entry;
            entry["oracle"] = c.oracle;
            entry["status"] = c.status;
            if (c.status == "mismatch") {
                entry["position"] = c.position;
                entry["engine"] = c.engine_value;
                entry["expected"] = c.oracle_value;
            }
            arr.push_back(std::move(entry));
        }
        json j;
        j["command"] = "verify";
        j["kind"] = job.kind == MatrixKind::semicirculant ? "semicirculant" : "rcirculant";
        j["ring"] = job.ring_spec;
        j["k"] = std::to_string(job.k);
        j["ok"] = ok;
        j["checks"] = std::move(arr);
        out << j.dump() << "\n";
    }
    return ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// bench

template <ring_descriptor R>
std::vector<typename R::element> random_row(const R& ring, std::mt19937_64& rng,
                                            std::size_t n) {
    std::uniform_int_distribution<int> dist(-9, 9);
    std::vector<typename R::element> row;
    row.reserve(n);
    for (std::size_t i = 0; i < n; ++i) row.push_back(ring.from_integer(Int(dist(rng))));
    return row;
}

template <typename F>
std::uint64_t time_reps(std::uint64_t reps, F&& body) {
    body();  // warm-up
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t i = 0; i < reps; ++i) body();
    const auto stop = std::chrono::steady_clock::now();
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
}

template <ring_descriptor R>
int do_bench(const R& ring, const JobSpec& job, std::ostream& out) {
    out << "n,k,ring,method,nanoseconds,ops\n";
    for (std::uint64_t n : job.bench_orders) {
        for (std::uint64_t k : job.bench_exponents) {
            std::mt19937_64 rng(job.bench_seed ^ (n * 0x9E3779B97F4A7C15ULL) ^ k);
            typename R::element r =
                job.r_given ? ring.from_integer(job.r) : random_row(ring, rng, 1)[0];
            RCirculant<R> c(ring, r, random_row(ring, rng, n));
            SquareMatrix<R> dense = to_dense(c);

            const auto emit = [&](const char* method, std::uint64_t ns) {
                out << n << "," << k << "," << ring.name() << "," << method << "," << ns << ","
                    << job.bench_reps << "\n";
            };
            emit("fold_serial", time_reps(job.bench_reps, [&] {
                     power_via_fold(c, k, Execution::serial);
                 }));
            emit("fold_omp", time_reps(job.bench_reps, [&] {
                     power_via_fold(c, k, Execution::parallel);
                 }));
            emit("dense_squaring_serial", time_reps(job.bench_reps, [&] {
                     pow_squaring(ring, dense, k, Execution::serial);
                 }));
            emit("dense_squaring_omp", time_reps(job.bench_reps, [&] {
                     pow_squaring(ring, dense, k, Execution::parallel);
                 }));
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------

void validate(const JobSpec& job) {
    if (job.command != CliCommand::bench) {
        if (job.row.empty()) throw ValidationError("--row: at least one entry required");
    }
    if (job.r_given && job.command != CliCommand::bench &&
        job.kind != MatrixKind::rcirculant)
        throw ValidationError("--r: only valid together with --rcirculant");
    if (job.command == CliCommand::formal && job.kind == MatrixKind::rcirculant)
        throw ValidationError("--rcirculant: formal applies to semicirculant rows");
    if (job.command == CliCommand::bench) {
        if (job.bench_reps == 0) throw ValidationError("--reps: must be >= 1");
        if (job.bench_orders.empty()) throw ValidationError("--n: at least one order required");
        for (std::uint64_t n : job.bench_orders)
            if (n == 0) throw ValidationError("--n: orders must be >= 1");
        if (job.bench_exponents.empty())
            throw ValidationError("--k: at least one exponent required");
    }
}

}  // namespace

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
    RingSpec parsed;
    try {
        validate(job);
        parsed = parse_ring_spec(job.ring_spec);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: --ring: " << e.what() << "\n";
        return 1;
    }

    try {
        const auto go = [&](const auto& ring) -> int {
            switch (job.command) {
                case CliCommand::power:
                    return do_power(ring, job, out);
                case CliCommand::formal:
                    return do_formal(ring, job, out);
                case CliCommand::verify:
                    return report_checks(job,
                                         job.kind == MatrixKind::semicirculant
                                             ? verify_semicirculant(ring, job)
                                             : verify_rcirculant(ring, job),
                                         out);
                case CliCommand::bench:
                    return do_bench(ring, job, out);
            }
            return 1;
        };
        return parsed.modular ? go(ModularRing(parsed.modulus)) : go(IntegerRing{});
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"powers of semicirculant and r-circulant matrices over commutative rings"};
    app.require_subcommand(1);

    JobSpec job;
    std::string ring_spec;
    std::string row_text;
    std::string r_text;
    std::string k_text;
    std::string format_text = "text";
    std::string bench_n_text = "2,4,8";
    std::string bench_k_text = "2,4,8";

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--ring", ring_spec, "ring spec: Z or Z/<m>")->required();
        sub->add_option("--format", format_text, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };
    const auto add_matrix = [&](CLI::App* sub) {
        sub->add_option("--row", row_text, "comma-separated first row (integers)")->required();
        sub->add_flag("--rcirculant", "treat the row as an r-circulant matrix");
        sub->add_option("--r", r_text, "wrap factor for --rcirculant (default 1)");
    };

    CLI::App* power_cmd = app.add_subcommand("power", "compute the k-th power");
    add_common(power_cmd);
    add_matrix(power_cmd);
    power_cmd->add_option("--k", k_text, "exponent (nonnegative integer)")->required();

    CLI::App* formal_cmd =
        app.add_subcommand("formal", "print the entries with the exponent k held symbolic");
    add_common(formal_cmd);
    add_matrix(formal_cmd);
    formal_cmd->add_option("--k", k_text, "must be \"symbolic\" when given");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "recompute through every applicable oracle and compare");
    add_common(verify_cmd);
    add_matrix(verify_cmd);
    verify_cmd->add_option("--k", k_text, "exponent (nonnegative integer)")->required();

    CLI::App* bench_cmd =
        app.add_subcommand("bench", "time the fold against dense repeated squaring (CSV)");
    add_common(bench_cmd);
    bench_cmd->add_option("--n", bench_n_text, "comma-separated orders to sweep");
    bench_cmd->add_option("--k", bench_k_text, "comma-separated exponents to sweep");
    bench_cmd->add_option("--reps", job.bench_reps, "timed repetitions per case");
    bench_cmd->add_option("--seed", job.bench_seed, "seed for the generated rows");
    bench_cmd->add_option("--r", r_text, "fixed wrap factor (default: generated)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (sub == power_cmd) job.command = CliCommand::power;
        if (sub == formal_cmd) job.command = CliCommand::formal;
        if (sub == verify_cmd) job.command = CliCommand::verify;
        if (sub == bench_cmd) job.command = CliCommand::bench;

        job.ring_spec = ring_spec;
        job.format = format_text == "json" ? OutputFormat::json : OutputFormat::text;

        if (job.command != CliCommand::bench) {
            job.kind = sub->count("--rcirculant") != 0 ? MatrixKind::rcirculant
                                                       : MatrixKind::semicirculant;
            job.row = parse_int_list(row_text, "--row");
        }
        if (sub->count("--r") != 0) {
            job.r = parse_decimal(r_text, "--r");
            job.r_given = true;
        }
        if (job.command == CliCommand::formal) {
            if (sub->count("--k") != 0 && k_text != "symbolic")
                throw ValidationError("--k: formal output is symbolic; pass --k symbolic or omit");
            job.symbolic_k = true;
        } else if (job.command == CliCommand::bench) {
            job.bench_orders = parse_u64_list(bench_n_text, "--n");
            job.bench_exponents = parse_u64_list(bench_k_text, "--k");
        } else {
            job.k = parse_u64(k_text, "--k");
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    return run(job, out, err);
}

}  // namespace circpow
