#pragma once

// JSON problem files: a field, a presented algebra, named modules and maps,
// and named scenarios (certificates, sequences, self-extension data, cusp
// modules and bimodules) built from them. Scalars are strings in the
// canonical spelling of the field; plain JSON integers are accepted too.

#include "cusp.hpp"
#include "degen.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <set>
#include <string>

namespace orbitcert {

using json = nlohmann::json;

inline FieldSpec read_field_spec(const json& doc) {
    if (!doc.is_object() || !doc.contains("field")) throw ParseError("problem file has no \"field\"");
    const auto& f = doc.at("field");
    const std::string kind = f.value("kind", "");
    if (kind == "rational") return {FieldKind::Rational, 0};
    if (kind == "prime") {
        if (!f.contains("p") || !f.at("p").is_number_unsigned()) throw ParseError("prime field needs integer \"p\"");
        const auto p = f.at("p").get<std::uint64_t>();
        if (p > 0xffffffffULL || !is_prime(std::uint32_t(p))) throw ParseError("field.p = " + std::to_string(p) + " is not prime");
        return {FieldKind::Prime, std::uint32_t(p)};
    }
    throw ParseError("unknown field kind '" + kind + "'");
}

template <ExactField F>
class Problem {
public:
    using Mat = Matrix<F>;

    Problem(const json& doc, const F& field) : field_(field), doc_(doc) {
        read_algebra();
        if (doc.contains("modules"))
            for (const auto& [name, m] : doc.at("modules").items()) {
                claim(name);
                modules_.emplace(name, read_module(name, m));
            }
        if (doc.contains("maps"))
            for (const auto& [name, m] : doc.at("maps").items()) {
                claim(name);
                maps_.emplace(name, read_matrix(m, "map " + name));
            }
        if (doc.contains("scenarios"))
            for (const auto& [name, s] : doc.at("scenarios").items()) {
                claim(name);
                if (!s.is_object() || !s.contains("kind")) throw ParseError("scenario " + name + " has no kind");
                scenarios_.emplace(name, s);
            }
        // resolve every scenario once so dangling references surface at load time
        for (const auto& [name, s] : scenarios_) {
            const std::string kind = s.at("kind").template get<std::string>();
            if (kind == "certificate" || kind == "submodule") certificate(name);
            else if (kind == "sequence") sequence(name);
            else if (kind == "datum") datum(name);
            else if (kind == "cusp-module") cusp_module(name);
            else if (kind == "cusp-bimodule") cusp_bimodule(name);
            else throw ParseError("scenario " + name + " has unknown kind '" + kind + "'");
        }
    }

    const F& field() const { return field_; }
    const AlgebraRef<F>& algebra() const { return algebra_; }
    const std::vector<std::string>& relation_labels() const { return labels_; }

    const ModulePoint<F>& module(const std::string& name) const { return lookup(modules_, name, "module"); }
    const Mat& map(const std::string& name) const { return lookup(maps_, name, "map"); }
    bool has_scenario(const std::string& name) const { return scenarios_.count(name) != 0; }
    std::string scenario_kind(const std::string& name) const { return scenario(name).at("kind").template get<std::string>(); }

    DegenerationCertificate<F> certificate(const std::string& name) const {
        const auto& s = scenario(name);
        const auto kind = s.at("kind").template get<std::string>();
        if (kind == "submodule") return certificate_from_submodule(module(ref(s, "module")), map(ref(s, "basis")));
        expect(name, kind, "certificate");
        DegenerationCertificate<F> c{module(ref(s, "M")), module(ref(s, "N")), module(ref(s, "Z")),
                                     map(ref(s, "f")), map(ref(s, "g"))};
        if (s.contains("dual")) {
            const auto& d = s.at("dual");
            c.dual = DualCertificate<F>{module(ref(d, "T")), map(ref(d, "f")), map(ref(d, "g"))};
        }
        c.normalized = s.value("normalized", false);
        return c;
    }

    /// Any scenario that carries a short exact sequence.
    ShortExactCandidate<F> sequence(const std::string& name) const {
        const auto& s = scenario(name);
        const auto kind = s.at("kind").template get<std::string>();
        if (kind == "certificate" || kind == "submodule") return certificate(name).sequence();
        if (kind == "datum") return datum(name).sequence();
        expect(name, kind, "sequence");
        return {module(ref(s, "U")), module(ref(s, "W")), module(ref(s, "V")), map(ref(s, "f")), map(ref(s, "g"))};
    }

    SelfExtensionDatum<F> datum(const std::string& name) const {
        const auto& s = scenario(name);
        expect(name, s.at("kind").template get<std::string>(), "datum");
        return {module(ref(s, "Z")), module(ref(s, "Y")), map(ref(s, "ftilde")), map(ref(s, "gtilde")),
                map(ref(s, "htilde"))};
    }

    CuspModule<F> cusp_module(const std::string& name) const {
        const auto& s = scenario(name);
        expect(name, s.at("kind").template get<std::string>(), "cusp-module");
        const auto& a = map(ref(s, "A"));
        const std::string side = s.value("side", "left");
        if (side != "left" && side != "right") throw ParseError("cusp module " + name + ": side must be left or right");
        return {a.rows(), a, map(ref(s, "B")), side == "left" ? Side::Left : Side::Right};
    }

    CuspBimodule<F> cusp_bimodule(const std::string& name) const {
        const auto& s = scenario(name);
        expect(name, s.at("kind").template get<std::string>(), "cusp-bimodule");
        const auto& la = map(ref(s, "LA"));
        return {la.rows(), la, map(ref(s, "LB")), map(ref(s, "RA")), map(ref(s, "RB"))};
    }

private:
    F field_;
    json doc_;
    AlgebraRef<F> algebra_;
    std::vector<std::string> labels_;
    std::set<std::string> names_;
    std::map<std::string, ModulePoint<F>> modules_;
    std::map<std::string, Mat> maps_;
    std::map<std::string, json> scenarios_;

    void claim(const std::string& name) {
        if (!names_.insert(name).second) throw ParseError("duplicate name '" + name + "'");
    }

    template <class T>
    static const T& lookup(const std::map<std::string, T>& m, const std::string& name, const char* what) {
        auto it = m.find(name);
        if (it == m.end()) throw ParseError(std::string("unresolved ") + what + " '" + name + "'");
        return it->second;
    }

    const json& scenario(const std::string& name) const { return lookup(scenarios_, name, "scenario"); }

    static std::string ref(const json& s, const char* key) {
        if (!s.contains(key) || !s.at(key).is_string())
            throw ParseError(std::string("scenario field \"") + key + "\" missing or not a name");
        return s.at(key).get<std::string>();
    }

    static void expect(const std::string& name, const std::string& kind, const char* want) {
        if (kind != want) throw ParseError("scenario " + name + " is a " + kind + ", not a " + want);
    }

    typename F::Scalar scalar(const json& v) const {
        if (v.is_string()) return field_.parse(v.get<std::string>());
        if (v.is_number_integer()) return field_.from_int(v.get<long>());
        throw ParseError("scalar must be a string or an integer: " + v.dump());
    }

    /// Either a list of rows, or {"rows": r, "cols": c, "entries": [...]} for
    /// shapes a bare list cannot express (no rows).
    Mat read_matrix(const json& m, const std::string& what) const {
        const json* rows = &m;
        std::size_t r = 0, c = 0;
        if (m.is_object()) {
            r = m.at("rows").get<std::size_t>();
            c = m.at("cols").get<std::size_t>();
            rows = m.contains("entries") ? &m.at("entries") : nullptr;
        } else if (m.is_array()) {
            r = m.size();
            c = r ? m.at(0).size() : 0;
        } else {
            throw ParseError(what + ": matrix must be a list of rows");
        }
        Mat out(field_, r, c);
        if (!rows) return out;
        if (!rows->is_array() || rows->size() != r) throw ParseError(what + ": expected " + std::to_string(r) + " rows");
        for (std::size_t i = 0; i < r; ++i) {
            const auto& row = rows->at(i);
            if (!row.is_array() || row.size() != c) throw ParseError(what + ": ragged row " + std::to_string(i));
            for (std::size_t j = 0; j < c; ++j) out(i, j) = scalar(row.at(j));
        }
        return out;
    }

    std::size_t generator_index(const json& g) const {
        const auto& names = algebra_ ? algebra_->names : pending_names_;
        if (g.is_number_unsigned()) {
            const auto i = g.get<std::size_t>();
            if (i >= names.size()) throw ParseError("generator index " + std::to_string(i) + " out of range");
            return i;
        }
        const auto label = g.get<std::string>();
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == label) return i;
        throw ParseError("unknown generator '" + label + "'");
    }
    std::vector<std::string> pending_names_;

    std::string describe(const json& terms) const {
        std::string out;
        for (const auto& t : terms) {
            std::string coef = t.at("coef").is_string() ? t.at("coef").get<std::string>() : t.at("coef").dump();
            std::string word;
            for (const auto& g : t.at("word"))
                word += (word.empty() ? "" : "*") + (g.is_string() ? g.get<std::string>() : g.dump());
            const bool neg = !coef.empty() && coef[0] == '-';
            if (neg) coef.erase(0, 1);
            out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            if (word.empty()) out += coef;
            else out += (coef == "1" ? "" : coef + "*") + word;
        }
        return out.empty() ? "0" : out;
    }

    void read_algebra() {
        if (!doc_.contains("algebra")) throw ParseError("problem file has no \"algebra\"");
        const auto& a = doc_.at("algebra");
        const auto& gens = a.at("generators");
        if (gens.is_number_unsigned()) {
            for (std::size_t i = 0; i < gens.get<std::size_t>(); ++i) pending_names_.push_back("x" + std::to_string(i));
        } else {
            for (const auto& g : gens) pending_names_.push_back(g.get<std::string>());
            std::set<std::string> uniq(pending_names_.begin(), pending_names_.end());
            if (uniq.size() != pending_names_.size()) throw ParseError("duplicate generator name");
        }
        std::vector<Relation<F>> rels;
        if (a.contains("relations"))
            for (const auto& r : a.at("relations")) {
                const json& terms = r.is_object() ? r.at("terms") : r;
                Relation<F> rel;
                for (const auto& t : terms) {
                    Word w;
                    for (const auto& g : t.at("word")) w.push_back(generator_index(g));
                    rel.push_back({scalar(t.at("coef")), std::move(w)});
                }
                labels_.push_back(r.is_object() && r.contains("name") ? r.at("name").get<std::string>() : describe(terms));
                rels.push_back(std::move(rel));
            }
        algebra_ = std::make_shared<const AlgebraPresentation<F>>(field_, pending_names_.size(), std::move(rels),
                                                                   pending_names_);
    }

    /// {"dim": d, "matrices": {gen: rows} | [rows, ...]}; matrices may be
    /// omitted for d = 0.
    ModulePoint<F> read_module(const std::string& name, const json& m) {
        if (!m.is_object() || !m.contains("dim")) throw ParseError("module " + name + " needs \"dim\"");
        const auto d = m.at("dim").get<std::size_t>();
        std::vector<Mat> mats(algebra_->generators, Mat(field_, d, d));
        if (m.contains("matrices")) {
            const auto& ms = m.at("matrices");
            if (ms.is_array()) {
                if (ms.size() != mats.size())
                    throw ParseError("module " + name + " has " + std::to_string(ms.size()) + " matrices for " +
                                     std::to_string(mats.size()) + " generators");
                for (std::size_t i = 0; i < ms.size(); ++i)
                    mats[i] = read_matrix(ms.at(i), "module " + name);
            } else {
                std::set<std::size_t> seen;
                for (const auto& [g, rows] : ms.items()) {
                    const auto i = generator_index(json(g));
                    seen.insert(i);
                    mats[i] = read_matrix(rows, "module " + name + " generator " + g);
                }
                if (seen.size() != mats.size() && d > 0) throw ParseError("module " + name + " is missing a generator matrix");
            }
        } else if (d > 0) {
            throw ParseError("module " + name + " needs \"matrices\"");
        }
        try {
            return ModulePoint<F>(algebra_, d, std::move(mats));
        } catch (const DimensionMismatch& e) {
            throw ParseError("module " + name + ": " + e.what());
        }
    }
};

}  // namespace orbitcert
