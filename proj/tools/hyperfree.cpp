// Command-line front end: hyperfree <command> <input> [options]

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "hyperfree.hpp"

using namespace hyperfree;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, Validation = 1, Inconclusive = 2, Internal = 3 };

struct Options {
    std::string command;
    std::string input;
    std::string second;
    std::vector<std::string> at;
    std::vector<std::string> at2;
    int max_n = 0;
    int max_states = 20000;
    std::string format = "text";
    std::string replay;
    std::string certificate_out;
};

/// The arrangement a command operates on, over Q or a quadratic field.
using AnyArrangement = std::variant<Arrangement<BigRat>, Arrangement<QuadElem>>;

struct Target {
    AnyArrangement arrangement;
    std::optional<Family> family;
    Json specialization;
};

std::variant<BigRat, QuadElem> parse_value(const std::vector<std::string>& at) {
    if (at.size() == 1) return BigRat::parse(at[0]);
    if (at.size() == 4 && at[0] == "quad") {
        const BigRat d = BigRat::parse(at[1]);
        if (!d.is_integer() || !d.numerator().fits_slong_p()) throw Error("invalid field parameter '" + at[1] + "'");
        return QuadElem(d.numerator().get_si(), BigRat::parse(at[2]), BigRat::parse(at[3]));
    }
    throw Error("--at expects a rational or 'quad d a b'");
}

template <ScalarDomain K>
Json specialization_json(const SpecializationResult<K>& s) {
    Json j;
    j["value"] = s.value.to_string();
    j["count"] = s.count();
    Json dropped = Json::array();
    for (int i : s.dropped) dropped.push_back(i + 1);
    j["dropped"] = dropped;
    Json merged = Json::array();
    for (auto [keep, gone] : s.merged) merged.push_back(std::to_string(gone + 1) + " -> " + std::to_string(keep + 1));
    j["merged"] = merged;
    j["generic_lattice"] = s.dropped.empty() && s.merged.empty() && s.lattice_isomorphic;
    return j;
}

Target resolve(const std::string& source, const std::vector<std::string>& at) {
    Input in = load_input(source);
    if (auto* arr = std::get_if<Arrangement<BigRat>>(&in)) {
        if (!at.empty()) throw Error("--at applies to families only");
        return {*arr, std::nullopt, Json()};
    }
    Family f = std::get<Family>(in);
    std::vector<std::string> value = at;
    if (value.empty()) {
        if (!f.is_constant()) throw Error("family '" + f.name + "' needs --at");
        value = {"0"};
    }
    const IntersectionLattice generic = generic_lattice(f);
    return std::visit(
        [&](const auto& w) -> Target {
            auto s = specialize(f, w, generic);
            if (!s.arrangement) throw NotEssential();
            return {*s.arrangement, f, specialization_json(s)};
        },
        parse_value(value));
}

std::string perm_string(const Permutation& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ", " : "") + std::to_string(p[i] + 1);
    return out + "]";
}

Json exps_json(const Exponents& e) { return Json::array({e[0], e[1], e[2]}); }

Json listing_json(const IntersectionLattice& lat) {
    Json lines = Json::array();
    std::istringstream in(lat.listing());
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    return lines;
}

// ---------------------------------------------------------------------------------------------
// Sections shared by several commands

template <ScalarDomain K>
Json freeness_json(const Arrangement<K>& a, const FreenessVerdict<K>& v) {
    Json j;
    j["verdict"] = v.status == FreenessStatus::Free      ? "Free"
                   : v.status == FreenessStatus::NotFree ? "NotFree"
                                                         : "Inconclusive";
    j["summary"] = v.summary();
    if (v.exponents) j["exponents"] = exps_json(*v.exponents);
    Json dims = Json::array();
    for (const auto& d : v.dimensions)
        dims.push_back("p=" + std::to_string(d.degree) + " expected " + std::to_string(d.expected) + " actual " +
                       std::to_string(d.actual));
    j["dimensions"] = dims;
    if (v.certificate) {
        const auto& c = *v.certificate;
        Json cj;
        cj["constant"] = c.constant.to_string();
        cj["degrees"] = Json::array({c.basis[0].pdeg(), c.basis[1].pdeg(), c.basis[2].pdeg()});
        bool ok = true;
        for (const auto& th : c.basis) ok = ok && in_derivation_module(a, th);
        auto again = saito_check(a, c.basis[0], c.basis[1], c.basis[2]);
        cj["verified"] = ok && again && *again == c.constant;
        j["certificate"] = cj;
    }
    return j;
}

template <ScalarDomain K>
Json inductive_json(const Arrangement<K>& a) {
    Json j;
    auto w = quick_non_if(a);
    j["quick_non_if"] = w.has_value();
    if (w) j["restriction_sizes"] = w->restriction_sizes;
    auto cert = inductively_free(a);
    j["inductively_free"] = cert.has_value();
    if (cert) {
        Json steps = Json::array();
        for (const auto& s : cert->steps)
            steps.push_back("delete " + std::to_string(s.label + 1) + " |A^H|=" + std::to_string(s.restriction_size) +
                            " " + to_string(s.exp_before) + " -> " + to_string(s.exp_after));
        j["chain"] = steps;
    }
    return j;
}

template <ScalarDomain K>
Json recursive_json(const RFSearchReport<K>& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["reason"] = r.reason;
    j["max_n"] = r.max_n;
    j["explored"] = r.explored;
    j["expansions"] = r.expansions.size();
    int incomplete = 0;
    for (const auto& e : r.expansions)
        if (!e.complete) ++incomplete;
    j["incomplete_expansions"] = incomplete;
    j["skipped_by_size"] = r.skipped_by_size;
    j["sound"] = r.sound();
    Json chain = Json::array();
    std::istringstream in(format_chain(r.chain));
    for (std::string l; std::getline(in, l);) chain.push_back(l);
    j["chain"] = chain;
    return j;
}

Json degeneracy_json(const Family& f) {
    const auto rep = degeneracy_set(f);
    Json j;
    Json rat = Json::array();
    for (const auto& r : rep.rational)
        rat.push_back(r.value.to_string() + " " + to_string(r.tag) + " count " + std::to_string(r.count));
    j["rational"] = rat;
    Json quad = Json::array();
    for (const auto& q : rep.quadratic)
        quad.push_back(q.factor.to_string() + " root " + q.root.to_string() + " " + to_string(q.tag) + " count " +
                       std::to_string(q.count));
    j["quadratic"] = quad;
    Json un = Json::array();
    for (const auto& p : rep.unresolved) un.push_back(p.to_string());
    j["unresolved"] = un;
    j["complete"] = rep.complete();
    return j;
}

// ---------------------------------------------------------------------------------------------
// Text rendering of a report object

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "none";
    return v.dump();
}

void render(const Json& j, std::string& out, int indent) {
    const std::string pad(indent, ' ');
    for (const auto& [key, v] : j.items()) {
        if (v.is_object()) {
            out += pad + key + ":\n";
            render(v, out, indent + 2);
        } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_number() || e.is_boolean(); })) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].dump();
            out += pad + key + ": " + s + "]\n";
        } else if (v.is_array()) {
            out += pad + key + ":" + (v.empty() ? " none" : "") + "\n";
            for (const auto& e : v) {
                if (is_scalar(e)) out += pad + "  " + scalar_text(e) + "\n";
                else render(e, out, indent + 2);
            }
        } else {
            out += pad + key + ": " + scalar_text(v) + "\n";
        }
    }
}

// ---------------------------------------------------------------------------------------------
// Commands

struct Outcome {
    Json report;
    int code = Ok;
};

template <ScalarDomain K>
Outcome run_on(const Options& o, const Target& t, const Arrangement<K>& a) {
    Outcome out;
    Json& j = out.report;
    const IntersectionLattice lat = lattice(a);
    const std::string& cmd = o.command;
    const int max_n = o.max_n > 0 ? o.max_n : a.size() + 1;
    if (cmd == "lattice") {
        j["n"] = a.size();
        j["flats"] = lat.flat_count();
        j["listing"] = listing_json(lat);
    } else if (cmd == "chi") {
        j["chi"] = char_poly(lat).factored();
    } else if (cmd == "free") {
        const auto v = decide_freeness(a);
        j["n"] = a.size();
        j["field"] = field_name(a.column(0)[0]);
        j["chi"] = char_poly(lat).factored();
        j["freeness"] = freeness_json(a, v);
        if (v.certificate && !o.certificate_out.empty()) {
            std::ofstream f(o.certificate_out);
            f << format_certificate(*v.certificate);
        }
        if (v.status == FreenessStatus::Inconclusive) out.code = Inconclusive;
    } else if (cmd == "indfree") {
        j["n"] = a.size();
        j["inductive"] = inductive_json(a);
    } else if (cmd == "recfree") {
        j["n"] = a.size();
        if (!o.replay.empty()) {
            const auto chain = parse_chain<K>(read_file(o.replay));
            const bool ok = replay_chain(a, chain);
            j["replay"] = ok ? "valid" : "invalid";
            j["moves"] = chain.size();
            if (!ok) {
                std::cerr << "error: chain does not replay to an inductively free arrangement\n";
                out.code = Validation;
            }
        } else {
            const auto r = recursively_free(a, max_n, o.max_states);
            j["recursive"] = recursive_json(r);
            if (r.verdict == RFVerdict::Unknown) out.code = Inconclusive;
        }
    } else if (cmd == "aut") {
        const auto g = aut_order(lat);
        j["order"] = g.order.get_str();
        Json gens = Json::array();
        for (const auto& p : g.generators) gens.push_back(perm_string(p));
        j["generators"] = gens;
    } else if (cmd == "abe") {
        Json pairs = Json::array();
        int violated = 0;
        for (int h = 0; h < a.size(); ++h) {
            if (lat.without(h).rank() != 3) continue;
            const auto r = abe_pair_check(a, h);
            if (r.status == AbeStatus::Violated) ++violated;
            pairs.push_back(std::to_string(h + 1) + " " + to_string(r.status) + " gcd " + r.common.to_string("x") +
                            " (" + r.note + ")");
        }
        j["pairs"] = pairs;
        j["violated"] = violated;
        if (violated) out.code = Internal;
    } else if (cmd == "report") {
        j["n"] = a.size();
        j["field"] = field_name(a.column(0)[0]);
        if (t.family) {
            j["family"] = t.family->name;
            j["specialization"] = t.specialization;
        }
        Json lj;
        lj["flats"] = lat.flat_count();
        lj["max_multiplicity"] = lat.max_multiplicity();
        lj["listing"] = listing_json(lat);
        j["lattice"] = lj;
        j["chi"] = char_poly(lat).factored();
        const auto v = decide_freeness(a);
        j["freeness"] = freeness_json(a, v);
        j["inductive"] = inductive_json(a);
        const auto r = recursively_free(a, max_n, o.max_states);
        j["recursive"] = recursive_json(r);
        j["aut_order"] = aut_order(lat).order.get_str();
        if (t.family) j["degeneracy"] = degeneracy_json(*t.family);
        if (v.status == FreenessStatus::Inconclusive || r.verdict == RFVerdict::Unknown) out.code = Inconclusive;
    }
    return out;
}

Outcome run(const Options& o) {
    if (o.command == "moduli") {
        Input in = load_input(o.input);
        auto* f = std::get_if<Family>(&in);
        if (!f) throw Error("moduli needs a family");
        Outcome out;
        const auto g = generic_lattice(*f);
        out.report["family"] = f->name;
        out.report["n"] = f->size();
        out.report["generic_flats"] = g.flat_count();
        out.report["generic_chi"] = char_poly(g).factored();
        out.report["degeneracy"] = degeneracy_json(*f);
        if (!o.at.empty()) {
            std::visit([&](const auto& w) { out.report["member"] = vL_membership(*f, g, w); }, parse_value(o.at));
        }
        return out;
    }
    if (o.command == "verify-lattice") {
        const auto lat = IntersectionLattice::parse_listing(read_file(o.input));
        Outcome out;
        out.report["n"] = lat.size();
        out.report["flats"] = lat.flat_count();
        out.report["chi"] = char_poly(lat).factored();
        if (!o.second.empty()) {
            const Target t = resolve(o.second, o.at);
            const bool iso = std::visit([&](const auto& a) { return lattice_iso(lat, lattice(a)).has_value(); },
                                        t.arrangement);
            out.report["isomorphic"] = iso;
            if (!iso) out.code = Validation;
        }
        return out;
    }
    if (o.command == "iso") {
        const Target t1 = resolve(o.input, o.at);
        const Target t2 = resolve(o.second, o.at2);
        const auto l1 = std::visit([](const auto& a) { return lattice(a); }, t1.arrangement);
        const auto l2 = std::visit([](const auto& a) { return lattice(a); }, t2.arrangement);
        Outcome out;
        const auto p = lattice_iso(l1, l2);
        out.report["isomorphic"] = p.has_value();
        if (p) out.report["bijection"] = perm_string(*p);
        return out;
    }
    const Target t = resolve(o.input, o.at);
    return std::visit([&](const auto& a) { return run_on(o, t, a); }, t.arrangement);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free, inductively free and recursively free line arrangements with exact arithmetic"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub, bool with_input = true) {
        if (with_input) sub->add_option("input", o.input, "paper13, paper15, or a family/arrangement file")->required();
        sub->add_option("--at", o.at, "parameter value: rational or 'quad d a b' for a + b*sqrt(d)")->expected(1, 4)
            ->allow_extra_args(false);
        sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };
    const std::vector<std::pair<std::string, std::string>> simple = {
        {"lattice", "print the flats on each hyperplane"},
        {"chi", "characteristic polynomial"},
        {"free", "decide freeness with a Saito certificate"},
        {"indfree", "inductive freeness"},
        {"aut", "automorphism group of the lattice"},
        {"abe", "deletion-pair check on every hyperplane"},
        {"moduli", "exceptional parameter values of a family"},
    };
    for (const auto& [name, help] : simple) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub);
        if (name == "free") sub->add_option("--certificate", o.certificate_out, "write the Saito certificate to a file");
    }
    for (const std::string name : {"recfree", "report"}) {
        auto* sub = app.add_subcommand(name, name == "report" ? "full analysis" : "recursive freeness search");
        add_common(sub);
        sub->add_option("--max-n", o.max_n, "largest arrangement size visited (default n + 1)");
        sub->add_option("--max-states", o.max_states, "state bound");
        if (name == "recfree") sub->add_option("--replay", o.replay, "check a chain file instead of searching");
    }
    auto* iso = app.add_subcommand("iso", "lattice isomorphism of two inputs");
    add_common(iso);
    iso->add_option("second", o.second, "second input")->required();
    iso->add_option("--at2", o.at2, "parameter value for the second input")->expected(1, 4);
    auto* vl = app.add_subcommand("verify-lattice", "parse a listing, optionally compare with an input");
    vl->add_option("listing", o.input, "listing file")->required();
    vl->add_option("against", o.second, "input to compare with");
    vl->add_option("--at", o.at, "parameter value for the input")->expected(1, 4);
    vl->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Ok : Validation;
    }
    o.command = app.get_subcommands().front()->get_name();

    try {
        Outcome out = run(o);
        if (o.command == "lattice" && o.format == "text") {
            for (const auto& l : out.report["listing"]) std::cout << l.get<std::string>() << "\n";
        } else if (o.format == "json") {
            std::cout << out.report.dump(2) << "\n";
        } else {
            std::string text;
            render(out.report, text, 0);
            std::cout << text;
        }
        return out.code;
    } catch (const InternalAssertion& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Internal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Validation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Internal;
    }
}
