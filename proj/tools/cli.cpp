#include "cli.hpp"

#include <orbitcert/orbitcert.hpp>
#include <orbitcert/problem.hpp>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace orbitcert::cli {
namespace {

using ojson = nlohmann::ordered_json;

struct Flags {
    std::string command, file, module, from, to, datum;
    std::vector<std::string> certs;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::optional<std::uint64_t> budget;
    std::optional<unsigned> dim;
};

/// Raised for missing flags or commands that do not apply to the input.
struct Usage : Error {
    using Error::Error;
};

std::string sha256(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return "sha256:" + os.str();
}

const std::string& need(const std::string& v, const char* flag) {
    if (v.empty()) throw Usage(std::string("missing required flag ") + flag);
    return v;
}

template <ExactField F>
ojson matrix_json(const Matrix<F>& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(F::format(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <ExactField F>
ojson module_json(const ModulePoint<F>& m) {
    ojson mats = ojson::array();
    for (const auto& a : m.mats()) mats.push_back(matrix_json(a));
    return {{"dim", m.dim()}, {"matrices", std::move(mats)}};
}

struct Outcome {
    std::string verdict;
    int exit = Ok;
    ojson values = ojson::object();
    ojson details = ojson::array();
};

int exit_for(Status s) {
    switch (s) {
        case Status::Pass: return Ok;
        case Status::Fail: return Failed;
        case Status::PreconditionFailure: return Precondition;
        case Status::TheoremViolation: return Violation;
    }
    return Failed;
}

Outcome from_report(const Report& r) {
    Outcome o{r.verdict, exit_for(r.status)};
    for (const auto& [k, v] : r.values) o.values[k] = v;
    for (const auto& d : r.details) o.details.push_back(d);
    return o;
}

Outcome from_bool(bool b) { return {b ? "TRUE" : "FALSE", b ? Ok : Failed}; }

template <ExactField F>
class Commands {
public:
    Commands(const Problem<F>& p, const Flags& fl) : p_(p), fl_(fl) {}

    Outcome dispatch(const std::string& c) {
        if (c == "validate") return validate();
        if (c == "hom") return hom();
        if (c == "orbitdim") return orbitdim();
        if (c == "exact") return from_report(check_exact(sequence()));
        if (c == "split") return split();
        if (c == "certify") return from_report(certify_regularity(p_.certificate(cert(0))));
        if (c == "normalize") return normalize();
        if (c == "thm2") return from_report(theorem2_gap(p_.datum(need(fl_.datum, "--datum"))));
        if (c == "p1") return from_bool(check_p1(p_.cusp_module(need(fl_.module, "--module"))));
        if (c == "p1prime") return from_bool(check_p1prime(p_.cusp_module(need(fl_.module, "--module"))));
        if (c == "p2") return from_bool(check_p2(p_.cusp_bimodule(need(fl_.module, "--module"))));
        if (c == "longn") return from_report(check_long_n(p_.cusp_bimodule(need(fl_.module, "--module"))));
        if (c == "endo-bimodule") return endo();
        if (c == "degenerate") return degenerate();
        if (c == "partition-oracle") return partition_oracle();
        if (c == "search-thm2") return search();
        if (c == "unique") return unique();
        throw Usage("unknown command '" + c + "'");
    }

private:
    const Problem<F>& p_;
    const Flags& fl_;

    std::string cert(std::size_t i) const {
        if (fl_.certs.size() <= i) throw Usage(i ? "command needs two --cert flags" : "missing required flag --cert");
        return fl_.certs[i];
    }

    ShortExactCandidate<F> sequence() const {
        if (!fl_.datum.empty()) return p_.datum(fl_.datum).sequence();
        return p_.sequence(cert(0));
    }

    Outcome validate() {
        const auto& name = need(fl_.module, "--module");
        const auto v = validate_module(p_.module(name));
        Outcome o = from_bool(v.pass);
        o.verdict = v.pass ? "PASS" : "FAIL";
        o.values["dim"] = p_.module(name).dim();
        if (v.failing_relation) {
            const auto i = *v.failing_relation;
            o.values["failing_relation"] = i;
            o.details.push_back("relation " + std::to_string(i) + " (" + p_.relation_labels()[i] +
                                ") does not vanish");
        }
        return o;
    }

    Outcome hom() {
        const auto& m = p_.module(need(fl_.from, "--from"));
        const auto& n = p_.module(need(fl_.to, "--to"));
        Outcome o{"PASS"};
        o.values["dim"] = hom_dim(m, n);
        return o;
    }

    Outcome orbitdim() {
        const auto& m = p_.module(need(fl_.module, "--module"));
        Outcome o{"PASS"};
        o.values["dim"] = m.dim();
        o.values["[M,M]"] = hom_dim(m, m);
        o.values["orbit_dim"] = orbit_dim(m);
        return o;
    }

    Outcome split() {
        const auto s = sequence();
        const auto ex = check_exact(s);
        if (!ex.passed()) {
            Outcome o = from_report(ex);
            o.verdict = "PRECONDITION-FAILURE";
            o.exit = Precondition;
            o.details.push_back("sequence is not exact");
            return o;
        }
        try {
            const auto c = check_split(s);
            Outcome o{c.split() ? "SPLIT" : "NONSPLIT", c.split() ? Ok : Failed};
            o.values["hom_into_U"] = c.hom_into_U;
            o.values["hom_from_V"] = c.hom_from_V;
            o.values["section"] = c.section;
            return o;
        } catch (const CriteriaDisagreement& e) {
            Outcome o{"THEOREM-VIOLATION", Violation};
            o.details.push_back(e.what());
            return o;
        }
    }

    Outcome normalize() {
        const auto before = p_.certificate(cert(0));
        const auto after = normalize_certificate(before);
        Outcome o{"PASS"};
        o.values["dZ_before"] = before.Z.dim();
        o.values["dZ_after"] = after.Z.dim();
        o.values["f_radical"] = is_radical_hom(after.f, after.Z, after.middle());
        o.details.push_back({{"Z", module_json(after.Z)}, {"f", matrix_json(after.f)}, {"g", matrix_json(after.g)}});
        return o;
    }

    Outcome endo() {
        const auto d = p_.datum(need(fl_.datum, "--datum"));
        const auto [x, y] = endo_pair_from_datum(d);
        const auto b = endo_bimodule(d.Y, x, y);
        const bool p2 = check_p2(b);
        Outcome o{"PASS"};
        if (p2) o = from_report(check_long_n(b));
        o.values["dim"] = b.dim;
        o.values["P1_left"] = check_p1(b.left());
        o.values["P1'_right"] = check_p1prime(b.right());
        o.values["P2"] = p2;
        return o;
    }

    Outcome degenerate() {
        if (!fl_.certs.empty()) {
            const auto c = p_.certificate(cert(0));
            Outcome o = from_report(check_certificate_exact(c));
            const long dm = long(orbit_dim(c.M)), dn = long(orbit_dim(c.N));
            o.values["dimO_M"] = dm;
            o.values["dimO_N"] = dn;
            o.values["codim"] = dm - dn;
            if (o.exit == Ok) o.verdict = "DEGENERATION-certified";
            return o;
        }
        return from_report(codim1_identities(p_.module(need(fl_.from, "--from")), p_.module(need(fl_.to, "--to"))));
    }

    Outcome partition_oracle() {
        if (!fl_.dim) throw Usage("missing required flag --dim");
        const auto ps = partitions(*fl_.dim);
        Outcome o{"PASS"};
        std::size_t pairs = 0, mismatches = 0;
        for (const auto& a : ps)
            for (const auto& b : ps) {
                ++pairs;
                const auto h = hom_dim(jordan_module(a, p_.field()), jordan_module(b, p_.field()));
                if (h != partition_hom(a, b)) {
                    ++mismatches;
                    o.details.push_back("hom dimension " + std::to_string(h) + " != formula " +
                                        std::to_string(partition_hom(a, b)));
                }
            }
        o.values["partitions"] = ps.size();
        o.values["pairs"] = pairs;
        o.values["mismatches"] = mismatches;
        if (mismatches) o = Outcome{"FAIL", Failed, o.values, o.details};
        return o;
    }

    Outcome search() {
        if constexpr (F::characteristic_zero) {
            throw Usage("search-thm2 needs a prime field");
        } else {
            const auto& alg = *p_.algebra();
            if (!alg.relations.empty()) throw Usage("search-thm2 needs a free algebra (no relations)");
            SearchOptions opt;
            opt.t = alg.generators;
            opt.dz = fl_.dim.value_or(2);
            opt.budget = fl_.budget.value_or(opt.budget);
            opt.seed = fl_.seed;
            opt.jobs = fl_.jobs;
            if (opt.t > 2 || opt.dz > 4 || opt.t == 0 || opt.dz == 0)
                throw PreconditionError("search-thm2 supports 1 <= t <= 2 and 1 <= dZ <= 4");
            const auto res = search_thm2(p_.field(), opt);
            Outcome o{"PASS"};
            o.values["tuples"] = res.stats.tuples;
            o.values["summand_found"] = res.stats.summand_found;
            o.values["nonsplit"] = res.stats.nonsplit;
            o.values["not_indecomposable"] = res.stats.not_indecomposable;
            o.values["skipped_enumeration"] = res.stats.skipped_enumeration;
            o.values["budget_exhausted"] = res.stats.budget_exhausted;
            o.values["data"] = res.data.size();
            long min_gap = -1;
            for (std::size_t i = 0; i < res.data.size(); ++i) {
                const auto r = theorem2_gap(res.data[i]);
                const long gap = *r.get("gap");
                if (min_gap < 0 || gap < min_gap) min_gap = gap;
                o.details.push_back({{"trial", res.trial[i]},
                                     {"status", to_string(r.status)},
                                     {"gap", gap},
                                     {"Z", module_json(res.data[i].Z)},
                                     {"Y", module_json(res.data[i].Y)},
                                     {"ftilde", matrix_json(res.data[i].ftilde)},
                                     {"gtilde", matrix_json(res.data[i].gtilde)},
                                     {"htilde", matrix_json(res.data[i].htilde)}});
                if (r.status == Status::TheoremViolation) o = Outcome{"THEOREM-VIOLATION", Violation, o.values, o.details};
            }
            if (min_gap >= 0) o.values["min_gap"] = min_gap;
            return o;
        }
    }

    Outcome unique() { return from_report(uniqueness_check(p_.certificate(cert(0)), p_.certificate(cert(1)))); }
};

template <ExactField F>
Outcome execute(const json& doc, const F& field, const Flags& fl) {
    const Problem<F> problem(doc, field);
    return Commands<F>(problem, fl).dispatch(fl.command);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    static const std::vector<std::string> commands = {
        "validate", "hom", "orbitdim", "exact", "split", "certify", "normalize", "thm2", "p1",
        "p1prime", "p2", "longn", "endo-bimodule", "degenerate", "partition-oracle", "search-thm2", "unique"};

    Flags fl;
    CLI::App app("Exact verification of module degenerations", "orbitcert");
    app.add_option("command", fl.command, "command to run")->required()->check(CLI::IsMember(commands));
    app.add_option("--file", fl.file, "problem file (JSON)")->required();
    app.add_option("--module", fl.module, "module or cusp scenario name");
    app.add_option("--from", fl.from, "source module");
    app.add_option("--to", fl.to, "target module");
    app.add_option("--cert", fl.certs, "certificate or sequence scenario (repeat for unique)");
    app.add_option("--datum", fl.datum, "self-extension datum");
    app.add_option("--seed", fl.seed, "search seed");
    app.add_option("--jobs", fl.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--budget", fl.budget, "search budget");
    app.add_option("--dim", fl.dim, "partition size or search dimension of Z");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "orbitcert: " << e.what() << "\n";
        return Precondition;
    }

    std::ifstream in(fl.file, std::ios::binary);
    if (!in) {
        err << "orbitcert: cannot read " << fl.file << "\n";
        return Precondition;
    }
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    ojson inputs = {{"file", fl.file}, {"digest", sha256(bytes)}};
    if (!fl.module.empty()) inputs["module"] = fl.module;
    if (!fl.from.empty()) inputs["from"] = fl.from;
    if (!fl.to.empty()) inputs["to"] = fl.to;
    if (!fl.certs.empty()) inputs["cert"] = fl.certs;
    if (!fl.datum.empty()) inputs["datum"] = fl.datum;
    if (fl.dim) inputs["dim"] = *fl.dim;
    if (fl.command == "search-thm2") {
        inputs["seed"] = fl.seed;
        inputs["jobs"] = fl.jobs;
        if (fl.budget) inputs["budget"] = *fl.budget;
    }

    Outcome o;
    try {
        const json doc = json::parse(bytes);
        const auto spec = read_field_spec(doc);
        o = spec.kind == FieldKind::Rational ? execute(doc, RationalField{}, fl) : execute(doc, PrimeField(spec.p), fl);
    } catch (const json::exception& e) {
        err << "orbitcert: malformed problem file: " << e.what() << "\n";
        return Precondition;
    } catch (const Usage& e) {
        err << "orbitcert: " << e.what() << "\n";
        return Precondition;
    } catch (const ParseError& e) {
        err << "orbitcert: " << e.what() << "\n";
        return Precondition;
    } catch (const Error& e) {
        // unsupported fields, non-exact input to a constructor, wrong cusp side, ...
        o = Outcome{"PRECONDITION-FAILURE", Precondition};
        o.details.push_back(e.what());
        err << "orbitcert: " << e.what() << "\n";
    }

    ojson report = {{"command", fl.command},
                    {"inputs", std::move(inputs)},
                    {"verdict", o.verdict},
                    {"values", std::move(o.values)},
                    {"details", std::move(o.details)}};
    out << report.dump(2) << "\n";
    return o.exit;
}

}  // namespace orbitcert::cli
