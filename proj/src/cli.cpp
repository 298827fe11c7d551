#include "idem/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "idem/error.hpp"
#include "idem/groebner.hpp"
#include "idem/idempotent.hpp"
#include "idem/matrix_io.hpp"
#include "idem/poset.hpp"
#include "idem/qcount.hpp"
#include "idem/smith.hpp"

namespace idem::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IoOptions {
    std::string input;
    std::string output;
    bool json = false;
};

struct Options {
    IoOptions io;
    std::string ring;
    unsigned n = 0;
    unsigned r = 0;
    bool has_r = false;
    std::uint64_t p = 2;
    std::uint64_t q = 2;
    unsigned threads = 1;
    std::string format = "dot";
    std::vector<std::string> pairs;
    std::vector<std::string> bezout;
    long slice = 0;
    std::size_t budget = gb::BuchbergerOptions{}.max_pairs;
    bool with_basis = false;
};

unsigned default_threads() {
    const char* env = std::getenv(kThreadsEnv);
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0 || v > 1024)
        throw UsageError(std::string(kThreadsEnv) + " must be a positive integer, got '" + env + "'");
    return static_cast<unsigned>(v);
}

const CLI::Validator kPrime = CLI::Validator(
    [](std::string& s) -> std::string {
        std::uint64_t v = 0;
        try {
            v = std::stoull(s);
        } catch (const std::exception&) {
            return "not an integer: " + s;
        }
        return is_prime(v) && v < (std::uint64_t{1} << 32) ? std::string{} : s + " is not a prime below 2^32";
    },
    "PRIME");

std::vector<Matrix> read_matrices(std::istream& in, bool as_json) {
    std::vector<Matrix> out;
    if (as_json) {
        json doc = json::parse(in);
        if (doc.is_array()) {
            for (const json& m : doc) out.push_back(matrix_from_json(m));
        } else {
            out.push_back(matrix_from_json(doc));
        }
        return out;
    }
    MatrixReader reader(in);
    while (auto m = reader.next()) out.push_back(std::move(*m));
    return out;
}

class Session {
public:
    Session(const Options& opts, std::istream& in, std::ostream& out) : opts_(opts), in_(in), out_(out) {
        if (!opts.io.output.empty()) {
            file_out_.open(opts.io.output);
            if (!file_out_) throw UsageError("cannot open output file " + opts.io.output);
        }
    }

    std::vector<Matrix> matrices(std::size_t expected = 0) {
        std::vector<Matrix> ms;
        if (opts_.io.input.empty() || opts_.io.input == "-") {
            ms = read_matrices(in_, opts_.io.json);
        } else {
            std::ifstream f(opts_.io.input);
            if (!f) throw UsageError("cannot read input file " + opts_.io.input);
            ms = read_matrices(f, opts_.io.json);
        }
        if (ms.empty()) throw UsageError("no matrix in input");
        if (expected != 0 && ms.size() != expected)
            throw UsageError("expected " + std::to_string(expected) + " matrices, got " + std::to_string(ms.size()));
        return ms;
    }

    std::ostream& out() { return file_out_.is_open() ? static_cast<std::ostream&>(file_out_) : out_; }

    void emit_matrix(const Matrix& m) {
        if (opts_.io.json)
            out() << matrix_to_json(m).dump() << '\n';
        else
            out() << format_matrix_text(m);
    }

    void emit_json(const json& j) { out() << j.dump(2) << '\n'; }

private:
    const Options& opts_;
    std::istream& in_;
    std::ostream& out_;
    std::ofstream file_out_;
};

int cmd_check(const Options& o, Session& s) {
    std::optional<Ring> ring;
    if (!o.ring.empty()) ring = parse_ring_tag(o.ring);
    bool all = true;
    for (const Matrix& m : s.matrices()) {
        if (ring && !same_ring(*ring, m.ring()))
            throw Error(ErrorKind::RingMismatch, "matrix is over " + m.ring()->name() + ", expected " + o.ring);
        bool ok = is_idempotent(m);
        all = all && ok;
        std::optional<std::size_t> r;
        if (ok) r = Idempotent(m).rank();
        if (o.io.json) {
            json j{{"idempotent", ok}};
            if (r) j["rank"] = *r;
            s.out() << j.dump() << '\n';
        } else if (ok) {
            s.out() << "idempotent rank=" << *r << '\n';
        } else {
            s.out() << "not idempotent\n";
        }
    }
    return all ? Ok : DomainFailure;
}

int cmd_enumerate(const Options& o, Session& s) {
    EnumerationOptions eo;
    eo.threads = o.threads;
    bool first = true;
    for (const Idempotent& e : enumerate_idempotents(o.n, o.p, eo)) {
        if (o.io.json) {
            s.out() << matrix_to_json(e.matrix()).dump() << '\n';
        } else {
            if (!first) s.out() << '\n';
            s.out() << "# rank " << e.rank() << '\n' << format_matrix_text(e.matrix());
        }
        first = false;
    }
    return Ok;
}

int cmd_hasse(const Options& o, Session& s) {
    EnumerationOptions eo;
    eo.threads = o.threads;
    HasseDiagram d = build_hasse(o.n, o.p, eo);
    if (o.io.json || o.format == "json")
        s.emit_json(to_json(d));
    else
        s.out() << to_dot(d);
    return Ok;
}

int cmd_count(const Options& o, Session& s) {
    mpz_class total = 0;
    if (o.has_r) {
        total = idempotent_count(o.n, o.r, o.q);
    } else {
        for (unsigned r = 0; r <= o.n; ++r) total += idempotent_count(o.n, r, o.q);
    }
    if (o.io.json) {
        json j{{"n", o.n}, {"q", o.q}, {"count", total.get_str()}};
        j["r"] = o.has_r ? json(o.r) : json(nullptr);
        s.out() << j.dump() << '\n';
    } else {
        s.out() << total.get_str() << '\n';
    }
    return Ok;
}

int cmd_snf(const Options& o, Session& s) {
    bool first = true;
    for (const Matrix& m : s.matrices()) {
        SmithDecomposition d = smith_normal_form(m);
        if (o.io.json) {
            json factors = json::array();
            for (const RingValue& f : d.invariant_factors) factors.push_back(f.str());
            s.out() << json{{"P", matrix_to_json(d.left)},
                            {"D", matrix_to_json(d.diagonal)},
                            {"Q", matrix_to_json(d.right)},
                            {"invariant_factors", factors}}
                           .dump()
                    << '\n';
            continue;
        }
        if (!first) s.out() << '\n';
        first = false;
        s.out() << "# P\n" << format_matrix_text(d.left);
        s.out() << "# D\n" << format_matrix_text(d.diagonal);
        s.out() << "# Q\n" << format_matrix_text(d.right);
    }
    return Ok;
}

int cmd_factor(const Options&, Session& s) {
    for (const Matrix& m : s.matrices()) {
        IdempotentFactorization f = idempotent_snf_factor(m);
        s.emit_json(json{{"S", matrix_to_json(f.left)}, {"T", matrix_to_json(f.right)}, {"ell", f.ell}});
    }
    return Ok;
}

int cmd_build(const Options& o, Session& s) {
    BlockBuilderInput input = [&] {
        if (o.pairs.empty()) {
            if (!o.bezout.empty()) throw UsageError("--bezout needs --pairs");
            std::vector<Matrix> ms = s.matrices(4);
            return BlockBuilderInput{ms[0], ms[2], ms[1], ms[3]};
        }
        if (o.ring.empty()) throw UsageError("--pairs needs --ring");
        Ring ring = parse_ring_tag(o.ring);
        auto values = [&](const std::vector<std::string>& texts) {
            std::vector<RingValue> v;
            for (const std::string& t : texts) v.push_back(parse_scalar(ring, t));
            return v;
        };
        std::vector<RingValue> ab = values(o.pairs);
        if (o.bezout.empty()) return coprime_pair_builder(ab[0], ab[1], ab[2], ab[3]);
        std::vector<RingValue> gh = values(o.bezout);
        return coprime_pair_builder(ab[0], ab[1], ab[2], ab[3], gh[0], gh[1], gh[2], gh[3]);
    }();
    s.emit_matrix(block_build_idempotent(input).matrix());
    return Ok;
}

int cmd_kron(const Options&, Session& s) {
    std::vector<Matrix> ms = s.matrices(2);
    s.emit_matrix(kron_idempotent(ms[0], ms[1]).matrix());
    return Ok;
}

int cmd_dim(const Options& o, std::optional<long> slice, Session& s) {
    gb::BuchbergerOptions bo;
    bo.max_pairs = o.budget;
    gb::VarietyDimension v = gb::variety_dimension(o.n, slice, bo);
    std::vector<std::string> names = gb::matrix_variable_names(o.n);
    json lts = json::array();
    for (const gb::Monomial& m : v.leading_monomials) lts.push_back(gb::format(m, names));
    json j{{"n", o.n},
           {"slice", slice ? json(*slice) : json(nullptr)},
           {"order", "grlex"},
           {"variables", names},
           {"leading_monomials", lts},
           {"dimension", v.dimension},
           {"pairs_reduced", v.basis.pairs_reduced}};
    if (o.with_basis) {
        json basis = json::array();
        for (const gb::Polynomial& p : v.basis.elements) basis.push_back(gb::format(p, names));
        j["basis"] = basis;
    }
    s.emit_json(j);
    return Ok;
}

void add_io(CLI::App* sub, Options& o, bool reads) {
    if (reads) sub->add_option("-i,--input", o.io.input, "Matrix file (default: stdin)");
    sub->add_option("-o,--output", o.io.output, "Output file (default: stdout)");
    sub->add_flag("--json", o.io.json, "JSON instead of the text format");
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact computations with idempotent matrices", "idem"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    auto* check = app.add_subcommand("check", "Report whether each input matrix is idempotent, with its rank");
    add_io(check, o, true);
    check->add_option("--ring", o.ring, "Require this ring tag");

    auto* enumerate = app.add_subcommand("enumerate", "List every idempotent of M_n(F_p), rank ascending");
    add_io(enumerate, o, false);
    auto* hasse = app.add_subcommand("hasse", "Hasse diagram of the idempotents of M_n(F_p)");
    add_io(hasse, o, false);
    hasse->add_option("--format", o.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    for (auto* sub : {enumerate, hasse}) {
        sub->add_option("--n", o.n, "Matrix size")->required()->check(CLI::Range(1u, 16u));
        sub->add_option("--p", o.p, "Field characteristic")->required()->check(kPrime);
        sub->add_option("--threads", o.threads, std::string("Workers (default from ") + kThreadsEnv + ")")
            ->check(CLI::Range(1u, 1024u));
    }

    auto* count = app.add_subcommand("count", "Number of idempotents of rank r in M_n(F_q) (all ranks without --r)");
    add_io(count, o, false);
    count->add_option("--n", o.n, "Matrix size")->required()->check(CLI::Range(0u, 10000u));
    auto* r_opt = count->add_option("--r", o.r, "Rank");
    count->add_option("--q", o.q, "Field size")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 32));

    auto* snf = app.add_subcommand("snf", "Smith normal form P*A*Q = D");
    add_io(snf, o, true);
    auto* factor = app.add_subcommand("factor", "Factor an idempotent as E = S*T with T*S = diag(I, O) (JSON)");
    add_io(factor, o, true);

    auto* build = app.add_subcommand("build", "Idempotent [[CA, CB], [DA, DB]] from blocks A, B, C, D or coprime pairs");
    add_io(build, o, true);
    build->add_option("--ring", o.ring, "Ring tag for --pairs and --bezout");
    build->add_option("--pairs", o.pairs, "a1,b1,a2,b2 with gcd(a_i, b_i) = 1")->delimiter(',')->expected(4);
    build->add_option("--bezout", o.bezout, "g1,h1,g2,h2 with a_i g_i + b_i h_i = 1")->delimiter(',')->expected(4);

    auto* kron = app.add_subcommand("kron", "Kronecker product of two matrices, required to be idempotent");
    add_io(kron, o, true);

    auto* dim = app.add_subcommand("dim", "Dimension of the idempotent variety of M_n via a Groebner basis (JSON)");
    add_io(dim, o, false);
    dim->add_option("--n", o.n, "Matrix size")->required()->check(CLI::Range(1u, 6u));
    auto* slice_opt = dim->add_option("--slice", o.slice, "Add the generator tr(X) - r");
    dim->add_option("--budget", o.budget, "Maximum S-pair reductions")->check(CLI::PositiveNumber);
    dim->add_flag("--basis", o.with_basis, "Include the reduced Groebner basis");

    try {
        o.threads = default_threads();
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        o.has_r = r_opt->count() > 0;
        if (o.has_r && o.r > o.n) throw UsageError("--r must not exceed --n");

        Session session(o, in, out);
        int code = Ok;
        if (check->parsed()) code = cmd_check(o, session);
        else if (enumerate->parsed()) code = cmd_enumerate(o, session);
        else if (hasse->parsed()) code = cmd_hasse(o, session);
        else if (count->parsed()) code = cmd_count(o, session);
        else if (snf->parsed()) code = cmd_snf(o, session);
        else if (factor->parsed()) code = cmd_factor(o, session);
        else if (build->parsed()) code = cmd_build(o, session);
        else if (kron->parsed()) code = cmd_kron(o, session);
        else if (dim->parsed())
            code = cmd_dim(o, slice_opt->count() ? std::optional<long>(o.slice) : std::nullopt, session);
        session.out().flush();
        return code;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Ok : UsageFailure;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return UsageFailure;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return UsageFailure;
    } catch (const json::exception& e) {
        err << "parse error: " << e.what() << '\n';
        return UsageFailure;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return DomainFailure;
    }
}

} // namespace idem::cli
