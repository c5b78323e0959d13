#include "tdesign/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tdesign {

namespace {

std::string kind_name(FamilyKind k) {
    switch (k) {
    case FamilyKind::ExactPoly: return "exact-polynomial";
    case FamilyKind::BinaryExact: return "binary-exact";
    case FamilyKind::DeltaDependent: return "delta-dependent";
    }
    return "?";
}

} // namespace

Json family_to_json(const FunctionFamily& fam) {
    return Json{{"kind", kind_name(fam.kind())}, {"N", fam.domain_size()},
                {"m", fam.range_size()},         {"k", fam.order()},
                {"delta", fam.delta()},          {"seed", fam.seed()},
                {"size", fam.size()}};
}

Json rule_to_json(const QuadratureRule& rule) {
    Json j{{"t", rule.t}, {"nodes", rule.nodes}, {"weights", rule.weights}};
    if (rule.rounded) {
        j["N"] = rule.denom;
        j["weights_num"] = rule.units;
        j["weights_den"] = rule.denom;
    }
    return j;
}

Json ensemble_spec_to_json(const DesignEnsemble& ensemble) {
    Json j{{"variant", variant_name(ensemble.variant())},
           {"n", ensemble.dim()},
           {"t", ensemble.order()},
           {"size", ensemble.size()}};
    if (ensemble.epsilon_requested()) j["epsilon"] = *ensemble.epsilon_requested();
    if (ensemble.variant() == Variant::Main || ensemble.variant() == Variant::Improved) {
        j["rule"] = rule_to_json(ensemble.rule());
        j["node_rescale"] = ensemble.node_rescale();
        j["below_theorem_range"] = ensemble.below_theorem_range();
        Json fams;
        fams["f"] = family_to_json(*ensemble.f_family());
        if (ensemble.g_family()) fams["g"] = family_to_json(*ensemble.g_family());
        if (ensemble.g1_family()) fams["g1"] = family_to_json(*ensemble.g1_family());
        if (!ensemble.phase_bit_families().empty()) {
            Json bits = Json::array();
            for (const auto& fam : ensemble.phase_bit_families()) bits.push_back(family_to_json(fam));
            fams["phase_bits"] = bits;
            j["phase_modulus"] = ensemble.phase_modulus();
        }
        j["families"] = fams;
    }
    return j;
}

DesignEnsemble ensemble_from_spec(const Json& spec) {
    const std::string variant = spec.at("variant").get<std::string>();
    const std::uint64_t n = spec.at("n").get<std::uint64_t>();
    if (variant == "mub") return DesignEnsemble::mub(n);
    const unsigned t = spec.at("t").get<unsigned>();
    if (variant == "main") return DesignEnsemble::main(n, t);
    if (variant == "improved")
        return DesignEnsemble::improved(n, t, spec.at("epsilon").get<double>());
    throw std::invalid_argument("ensemble_from_spec: unknown variant " + variant);
}

Json report_to_json(const VerificationReport& rep) {
    Json j{{"n", rep.n},
           {"t", rep.t},
           {"variant", rep.variant},
           {"epsilon", rep.epsilon},
           {"max_unbalanced_residual", rep.max_unbalanced_residual},
           {"max_phase_sensitive_residual", rep.max_phase_sensitive_residual},
           {"max_balanced_rel_dev", rep.max_balanced_rel_dev},
           {"second_moment_residual", rep.second_moment_residual},
           {"off_support_residual", rep.off_support_residual},
           {"frame_trace_error", rep.frame_trace_error},
           {"monomials_checked", rep.monomials_checked},
           {"complete_enumeration", rep.complete_enumeration},
           {"theorem_bound_margin", rep.theorem_bound_margin},
           {"theorem_bound_applicable", rep.theorem_bound_applicable}};
    if (!rep.per_monomial.empty()) {
        Json table = Json::array();
        for (const auto& rec : rep.per_monomial)
            table.push_back(Json{{"monomial", monomial_to_string(rec.monomial)},
                                 {"measured_re", rec.measured.real()},
                                 {"measured_im", rec.measured.imag()},
                                 {"haar", rec.haar},
                                 {"residual", rec.residual}});
        j["per_monomial"] = table;
    }
    return j;
}

Json report_to_json(const DistinctionReport& rep) {
    Json j{{"n", rep.n},
           {"t", rep.t},
           {"variant", rep.variant},
           {"frobenius", rep.frobenius},
           {"l1", rep.l1},
           {"s_abs", rep.s_abs},
           {"s2", rep.s2},
           {"s4", rep.s4},
           {"berger_bound", rep.berger},
           {"frobenius_note", rep.frobenius_note}};
    if (rep.epsilon_hat) {
        j["epsilon_hat"] = *rep.epsilon_hat;
        j["delta_eps"] = rep.delta_eps;
        j["l1_floor"] = rep.l1_floor;
        j["premise_holds"] = rep.premise_holds;
    }
    if (rep.haar_baseline_mean) {
        j["haar_baseline_mean"] = *rep.haar_baseline_mean;
        j["haar_baseline_stderr"] = rep.haar_baseline_stderr;
    }
    return j;
}

namespace {

std::uint32_t parse_uint_strict(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty number in monomial");
    std::size_t pos = 0;
    const unsigned long v = std::stoul(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters in monomial number");
    return std::uint32_t(v);
}

} // namespace

Monomial parse_monomial(const std::string& text) {
    Monomial mono;
    auto parse_term_full = [](const std::string& term) -> MonomialTerm {
        const auto colon = term.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("monomial term needs index:exponents");
        const auto comma = term.find(',', colon);
        MonomialTerm out;
        out.index = parse_uint_strict(term.substr(0, colon));
        if (comma == std::string::npos) {
            out.c = out.d = parse_uint_strict(term.substr(colon + 1));
        } else {
            out.c = parse_uint_strict(term.substr(colon + 1, comma - colon - 1));
            out.d = parse_uint_strict(term.substr(comma + 1));
        }
        return out;
    };
    // primary grammar: terms split on ';', each "idx:c,d" or "idx:e"
    // fallback: terms split on ',', each "idx:e" (balanced shorthand)
    try {
        std::stringstream ss(text);
        std::string term;
        while (std::getline(ss, term, ';'))
            if (!term.empty()) mono.terms.push_back(parse_term_full(term));
        if (mono.terms.empty()) throw std::invalid_argument("empty monomial");
        return mono;
    } catch (const std::exception&) {
        mono.terms.clear();
    }
    std::stringstream ss(text);
    std::string term;
    while (std::getline(ss, term, ',')) {
        if (term.empty()) continue;
        const auto colon = term.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("monomial term needs index:exponent");
        MonomialTerm out;
        out.index = parse_uint_strict(term.substr(0, colon));
        out.c = out.d = parse_uint_strict(term.substr(colon + 1));
        mono.terms.push_back(out);
    }
    if (mono.terms.empty()) throw std::invalid_argument("empty monomial");
    return mono;
}

std::string monomial_to_string(const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < m.terms.size(); ++i) {
        if (i) out += ";";
        out += std::to_string(m.terms[i].index) + ":" + std::to_string(m.terms[i].c) + "," +
               std::to_string(m.terms[i].d);
    }
    return out;
}

DensityMatrix density_from_json(const Json& j) {
    const Eigen::Index n = Eigen::Index(j.at("n").get<std::uint64_t>());
    const auto& entries = j.at("entries");
    if (Eigen::Index(entries.size()) != n * n)
        throw std::invalid_argument("density matrix entry count does not match n*n");
    DensityMatrix rho;
    rho.entries.resize(n, n);
    Eigen::Index idx = 0;
    for (const auto& e : entries) {
        rho.entries(idx / n, idx % n) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        ++idx;
    }
    rho.validate();
    return rho;
}

namespace {

std::vector<std::vector<double>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

DensityMatrix density_from_file(const std::string& path) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
        const auto rows = read_csv(path);
        const Eigen::Index n = Eigen::Index(rows.size());
        DensityMatrix rho;
        rho.entries.resize(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            if (Eigen::Index(rows[std::size_t(r)].size()) != 2 * n)
                throw std::invalid_argument("csv row must hold re,im pairs for every column");
            for (Eigen::Index c = 0; c < n; ++c)
                rho.entries(r, c) = Complex(rows[std::size_t(r)][std::size_t(2 * c)],
                                            rows[std::size_t(r)][std::size_t(2 * c + 1)]);
        }
        rho.validate();
        return rho;
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return density_from_json(j);
}

PureState state_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    const auto& entries = j.at("amplitudes");
    PureState s;
    s.amplitudes.resize(Eigen::Index(entries.size()));
    Eigen::Index idx = 0;
    for (const auto& e : entries)
        s.amplitudes(idx++) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    const double norm = s.amplitudes.norm();
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("state vector is not normalized");
    return s;
}

} // namespace tdesign
