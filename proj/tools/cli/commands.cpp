#include "cli/commands.hpp"

#include <polya/arith.hpp>
#include <polya/biquad.hpp>
#include <polya/errors.hpp>
#include <polya/family.hpp>
#include <polya/ideal_oracle.hpp>
#include <polya/quad_field.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace polya::cli {

namespace {

std::string source_name(UnitDataSource s) {
    switch (s) {
    case UnitDataSource::explicit_unit: return "explicit-unit";
    case UnitDataSource::cf_signature: return "cf-signature";
    case UnitDataSource::external_criterion: return "criterion";
    default: return "undetermined";
    }
}

Json json_field(const QuadraticField& k) {
    Json j;
    j["d"] = k.d.str();
    j["disc"] = k.disc.str();
    Json ram = Json::array();
    for (const Int& p : k.ramified) ram.push_back(p.str());
    j["ramified"] = ram;
    j["r"] = k.r;
    return j;
}

Json json_unit(const FundamentalUnit& u) {
    Json j;
    j["x"] = u.x.str();
    j["y"] = u.y.str();
    j["denom"] = u.denom;
    j["norm"] = u.norm;
    j["period"] = u.period;
    return j;
}

Json json_class(const SquareClass& c) { return c.value().str(); }

Json json_subgroup(const SquareClassSubgroup& s) {
    Json j;
    j["rank"] = s.rank();
    j["order"] = s.order().str();
    Json basis = Json::array();
    for (const SquareClass& b : s.basis()) basis.push_back(json_class(b));
    j["basis"] = basis;
    return j;
}

Json json_tuple(const PrimeTuple& t) {
    Json j;
    Json primes = Json::array();
    for (std::size_t i = 0; i < t.primes.size(); ++i) {
        Json p;
        p["p"] = t.primes[i].str();
        p["primality"] =
            t.primality[i] == Primality::prime ? "prime" : "probable-prime";
        primes.push_back(p);
    }
    j["primes"] = primes;
    Json certs = Json::array();
    for (const auto& c : t.certificates) {
        Json e;
        e["i"] = c.i;
        e["j"] = c.j;
        e["symbol"] = c.symbol;
        certs.push_back(e);
    }
    j["certificates"] = certs;
    Json trace = Json::array();
    for (const auto& s : t.trace) {
        Json e;
        e["k"] = s.k;
        Json res = Json::array();
        for (const Int& n : s.residues) res.push_back(n.str());
        e["residues"] = res;
        e["crt_remainder"] = s.crt_remainder.str();
        e["crt_modulus"] = s.crt_modulus.str();
        e["candidates_examined"] = s.candidates_examined;
        trace.push_back(e);
    }
    j["search_trace"] = trace;
    j["product"] = t.product().str();
    return j;
}

Json json_pm2(const NormTwoSolvability& s) {
    Json j;
    j["plus2"] = s.plus2;
    j["minus2"] = s.minus2;
    if (s.witness) {
        Json w;
        w["x"] = s.witness->x.str();
        w["y"] = s.witness->y.str();
        w["denom"] = s.witness->denom;
        w["norm"] = s.witness->norm;
        j["witness"] = w;
    }
    return j;
}

Json json_beta(const BetaCertificate& b) {
    Json j;
    switch (b.mode) {
    case BetaCertificate::Mode::vacuous_negative_norm: j["mode"] = "vacuous-negative-norm"; break;
    case BetaCertificate::Mode::explicit_unit: j["mode"] = "explicit-unit"; break;
    case BetaCertificate::Mode::central_norm: j["mode"] = "central-norm"; break;
    default: j["mode"] = "undetermined"; break;
    }
    if (b.unit_norm != 0) j["unit_norm"] = b.unit_norm;
    if (b.period != 0) j["period"] = b.period;
    if (b.z) j["z"] = b.z->str();
    if (b.w) j["w"] = b.w->str();
    if (b.w1) j["w1"] = b.w1->str();
    if (b.central_q) j["central_q"] = b.central_q->str();
    if (b.alpha_class) j["alpha_class"] = json_class(*b.alpha_class);
    if (b.beta_class) j["beta_class"] = json_class(*b.beta_class);
    j["admissible"] = b.admissible;
    return j;
}

struct RangeSpec {
    Int lo, hi;
};

RangeSpec parse_range(const std::string& text) {
    auto pos = text.find("..");
    if (pos == std::string::npos)
        throw invalid_input("range must be of the form A..B, got '" + text + "'");
    try {
        RangeSpec r{Int(text.substr(0, pos)), Int(text.substr(pos + 2))};
        if (r.lo < 2 || r.hi < r.lo)
            throw invalid_input("range " + text + " is empty or starts below 2");
        return r;
    } catch (const std::runtime_error&) {
        throw invalid_input("range must be of the form A..B with integers, got '" + text + "'");
    }
}

} // namespace

CommandResult cmd_quad(const QuadOptions& opt, const CommonOptions& common) {
    if (common.csv) throw invalid_input("quad: --csv is only available for verify commands");
    QuadraticField k = make_field(opt.d);

    CommandResult res;
    Json& j = res.report.body;
    j["command"] = "quad";
    j["inputs"] = Json{{"d", opt.d.str()}, {"oracle", opt.oracle}};
    j["field"] = json_field(k);

    Json notes = Json::array();
    UnitBudget budget;
    if (k.d > 1) {
        if (k.d <= budget.explicit_max_d) {
            FundamentalUnit u = fundamental_unit(k);
            j["unit"] = json_unit(u);
            AClassInfo a = a_class(k, budget);
            if (a.value) j["a_value"] = a.value->str();
            j["a_class"] = json_class(a.cls);
        } else {
            UnitNormInfo n = unit_norm(k, budget);
            if (!n.known())
                throw unit_out_of_reach("quad: fundamental unit of d = " + k.d.str() +
                                        " is beyond the continued-fraction budget");
            Json u;
            u["norm"] = n.sign;
            u["period"] = n.period;
            u["source"] = source_name(n.source);
            j["unit_signature"] = u;
            AClassInfo a = a_class(k, budget);
            if (a.known()) j["a_class"] = json_class(a.cls);
            notes.push_back("unit coordinates omitted: regulator too large; norm from period parity");
        }
    }
    j["hilbert_polya_order"] = hilbert_polya_order(k).str();

    if (opt.oracle) {
        PolyaDirectReport direct = polya_direct(k);
        Json o;
        o["order"] = direct.order.str();
        Json subsets = Json::array();
        for (std::uint32_t m : direct.principal_subsets) subsets.push_back(m);
        o["principal_subsets"] = subsets;
        j["oracle"] = o;
        bool agree = direct.order == hilbert_polya_order(k);
        j["agree"] = agree;
        if (!agree) res.exit_code = 1;
    }
    j["provenance_notes"] = notes;
    return res;
}

CommandResult cmd_biquad(const BiquadOptions& opt, const CommonOptions& common) {
    if (common.csv) throw invalid_input("biquad: --csv is only available for verify commands");
    BiquadraticField k = make_biquad(opt.m1, opt.m2);

    CommandResult res;
    Json& j = res.report.body;
    j["command"] = "biquad";
    j["inputs"] = Json{{"m1", opt.m1.str()}, {"m2", opt.m2.str()}};
    j["m3"] = k.m3.str();
    j["subfields"] = Json{{"k1", json_field(k.k1)}, {"k2", json_field(k.k2)},
                          {"k3", json_field(k.k3)}};
    Json ram;
    for (const auto& [p, e] : k.ram) ram[p.str()] = e;
    j["ramification"] = ram;

    UnitBudget budget;
    std::array<AClassInfo, 3> a_infos = subfield_a_classes(k, budget);
    for (int i = 0; i < 3; ++i)
        if (!a_infos[i].known())
            throw unit_out_of_reach(
                "biquad: unit data of subfield " + std::to_string(i + 1) +
                " is beyond the continued-fraction budget; constructed family instances "
                "should go through the family command");

    PolyaOrderReport rep = polya_order_from(k, a_infos);
    Json a = Json::array();
    for (const AClassInfo& info : a_infos) {
        Json e;
        if (info.value) e["value"] = info.value->str();
        e["class"] = json_class(info.cls);
        e["source"] = source_name(info.source);
        a.push_back(e);
    }
    j["a_classes"] = a;
    j["h2"] = json_subgroup(rep.h1.h2);
    j["two_totally_ramified"] = rep.h1.two_totally_ramified;
    if (rep.h1.two_totally_ramified) {
        Json pm2 = Json::array();
        for (const auto& s : rep.h1.pm2) pm2.push_back(json_pm2(s));
        j["norm_pm2"] = pm2;
        j["sign_interpretation_diverges"] = rep.h1.sign_interpretation_diverges;
    }
    j["h1_index"] = rep.h1.index;
    j["h1_order"] = rep.h1_order.str();
    j["exponent_product"] = rep.exponent_product.str();
    j["po_order"] = rep.po_order.str();
    if (rep.rank2) j["rank2"] = *rep.rank2;
    return res;
}

namespace {

SignMatrix matrix_from_options(const FindPrimesOptions& opt) {
    if (opt.t < 2) throw invalid_input("find-primes: t must be >= 2");
    const bool has_pattern = !opt.pattern.empty();
    const bool has_signs = !opt.signs.empty();
    if (has_pattern == has_signs)
        throw invalid_input("find-primes: give exactly one of --pattern or --signs");
    if (has_pattern) {
        if (opt.pattern != "trotter")
            throw invalid_input("find-primes: unknown pattern '" + opt.pattern + "'");
        return trotter_pattern(opt.t);
    }
    std::vector<int> entries;
    std::stringstream ss(opt.signs);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "1" || item == "+1")
            entries.push_back(1);
        else if (item == "-1")
            entries.push_back(-1);
        else
            throw invalid_input("find-primes: bad sign entry '" + item + "'");
    }
    return SignMatrix(opt.t, std::move(entries)); // validates the count
}

} // namespace

CommandResult cmd_find_primes(const FindPrimesOptions& opt, const CommonOptions& common) {
    if (common.csv) throw invalid_input("find-primes: --csv is only available for verify commands");
    SignMatrix m = matrix_from_options(opt);
    SearchOptions sopt{opt.start, opt.limit};
    PrimeTuple tuple = find_prime_tuple(m, sopt);

    CommandResult res;
    Json& j = res.report.body;
    j["command"] = "find-primes";
    Json inputs;
    inputs["t"] = opt.t;
    if (!opt.pattern.empty()) inputs["pattern"] = opt.pattern;
    if (!opt.signs.empty()) inputs["signs"] = opt.signs;
    inputs["start"] = opt.start.str();
    inputs["limit"] = opt.limit;
    j["inputs"] = inputs;
    Json upper = Json::array();
    for (int e : m.upper()) upper.push_back(e);
    j["sign_matrix_upper"] = upper;
    j["tuple"] = json_tuple(tuple);
    j["trotter_applies"] = trotter_applies(m);
    return res;
}

namespace {

Json json_instance(const FamilyInstance& inst, const VerificationReport& rep) {
    Json j;
    j["t"] = inst.t;
    j["tuple"] = json_tuple(inst.tuple);
    j["P"] = inst.product.str();
    Json ram;
    for (const auto& [p, e] : inst.field.ram) ram[p.str()] = e;
    j["ramification"] = ram;
    j["exponent_product"] = rep.exponent_product.str();
    j["h2_order"] = rep.h2_order.str();
    j["h1_index"] = rep.h1_index;
    j["h1_order"] = rep.h1_order.str();
    j["po_order"] = rep.po_order.str();
    if (rep.rank2) j["rank2"] = *rep.rank2;
    j["expected_rank"] = inst.expected_rank;
    j["k2_norm"] = Json{{"sign", rep.k2_norm.sign},
                        {"source", source_name(rep.k2_norm.source)},
                        {"period", rep.k2_norm.period}};
    j["k3_norm"] = Json{{"sign", rep.k3_norm.sign},
                        {"source", source_name(rep.k3_norm.source)},
                        {"period", rep.k3_norm.period}};
    j["beta"] = json_beta(rep.beta);
    Json checks = Json::array();
    for (const FamilyCheck& c : rep.checks) {
        Json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["basis"] = c.basis == CheckBasis::computed ? "computed" : "criterion";
        e["detail"] = c.detail;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["pass"] = rep.pass;
    return j;
}

} // namespace

CommandResult cmd_family(const FamilyOptions& opt, const CommonOptions&) {
    if (opt.t < 2) throw invalid_input("family: t must be >= 2");
    if (opt.count < 1) throw invalid_input("family: count must be >= 1");

    CommandResult res;
    Json& j = res.report.body;
    j["command"] = "family";
    j["inputs"] = Json{{"t", opt.t}, {"count", opt.count}, {"start", opt.start.str()},
                       {"limit", opt.limit}};

    std::ostringstream csv;
    csv << "instance,t,P,po_order,pass\n";

    Json instances = Json::array();
    bool all_pass = true;
    Int start = opt.start;
    for (int i = 0; i < opt.count; ++i) {
        SearchOptions sopt{start, opt.limit};
        FamilyInstance inst = build_family_instance(opt.t, sopt);
        VerificationReport rep = verify_theorem_instance(inst);
        all_pass = all_pass && rep.pass;
        instances.push_back(json_instance(inst, rep));
        csv << i << "," << inst.t << "," << inst.product.str() << "," << rep.po_order.str()
            << "," << (rep.pass ? "true" : "false") << "\n";
        // Disjoint restart: strictly above everything used so far.
        for (const Int& p : inst.tuple.primes) start = std::max<Int>(start, p + 1);
    }
    j["instances"] = instances;
    j["all_pass"] = all_pass;
    if (!all_pass) res.exit_code = 1;
    res.report.csv = csv.str();
    return res;
}

CommandResult cmd_verify_hilbert(const VerifyHilbertOptions& opt, const CommonOptions& common) {
    RangeSpec range = parse_range(opt.range);

    std::vector<Int> ds; // both signs, squarefree only
    for (Int a = range.lo; a <= range.hi; ++a) {
        if (!factor(a).is_squarefree()) continue;
        ds.push_back(a);
        ds.push_back(-a);
    }
    if (ds.empty()) throw invalid_input("verify-hilbert: no squarefree |d| in range " + opt.range);

    struct Row {
        Int d;
        Int hilbert;
        Int oracle;
        bool agree;
    };
    std::vector<Row> rows(ds.size());

    int threads = std::max(1, common.threads);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            QuadraticField k = make_field(ds[i]);
            Row& row = rows[i];
            row.d = ds[i];
            row.hilbert = hilbert_polya_order(k);
            row.oracle = polya_direct(k).order;
            row.agree = row.hilbert == row.oracle;
        }
    };
    if (threads == 1) {
        work(0, rows.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (rows.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            std::size_t b = std::min(rows.size(), std::size_t(t) * chunk);
            std::size_t e = std::min(rows.size(), b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    CommandResult res;
    Json& j = res.report.body;
    j["command"] = "verify-hilbert";
    j["inputs"] = Json{{"range", opt.range}, {"threads", threads}};
    j["fields_checked"] = rows.size();

    std::ostringstream csv;
    csv << "d,hilbert,oracle,agree\n";
    Json mismatches = Json::array();
    std::size_t agree_count = 0;
    for (const Row& r : rows) {
        csv << r.d.str() << "," << r.hilbert.str() << "," << r.oracle.str() << ","
            << (r.agree ? "true" : "false") << "\n";
        if (r.agree) {
            ++agree_count;
        } else {
            mismatches.push_back(Json{{"d", r.d.str()},
                                      {"hilbert", r.hilbert.str()},
                                      {"oracle", r.oracle.str()}});
        }
    }
    j["agree_count"] = agree_count;
    j["mismatches"] = mismatches;
    j["all_agree"] = mismatches.empty();
    if (!mismatches.empty()) res.exit_code = 1;
    res.report.csv = csv.str();
    return res;
}

int emit(const CommandResult& result, const CommonOptions& common) {
    std::string text;
    if (common.csv && !result.report.csv.empty())
        text = result.report.csv;
    else if (common.json)
        text = render_json(result.report.body);
    else
        text = render_human(result.report.body);

    if (!common.out.empty()) {
        std::ofstream f(common.out, std::ios::binary);
        if (!f) throw invalid_input("cannot open --out file '" + common.out + "'");
        f << text;
    } else {
        std::cout << text;
    }
    return result.exit_code;
}

} // namespace polya::cli
