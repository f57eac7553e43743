#include "galstat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "galstat/catalog.hpp"
#include "galstat/chartab.hpp"
#include "galstat/charparam.hpp"
#include "galstat/frobstats.hpp"
#include "galstat/permcore.hpp"
#include "galstat/polyarith.hpp"

namespace galstat {
namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Formatting helpers. Floats are always rendered with 6 decimals; exact
// rationals are rendered as num/den strings so no precision is lost.

std::string f6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// JSON norms round-trip through the 6-decimal rendering so that the JSON and
// table outputs always agree.
double j6(double v) { return std::strtod(f6(v).c_str(), nullptr); }

ordered_json int_json(const Int& v) {
    if (v.fits_slong_p()) return static_cast<long>(v.get_si());
    return v.get_str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        std::size_t a = item.find_first_not_of(" \t");
        std::size_t b = item.find_last_not_of(" \t");
        out.push_back(a == std::string::npos ? "" : item.substr(a, b - a + 1));
    }
    return out;
}

std::string svector_str(const std::vector<Int>& sv) {
    std::vector<std::string> parts;
    for (const Int& v : sv) parts.push_back(v.get_str());
    return "(" + join(parts, ", ") + ")";
}

std::string rat_row_str(const std::vector<Rat>& row) {
    std::vector<std::string> parts;
    for (const Rat& v : row) parts.push_back(to_string(v));
    return "[ " + join(parts, ", ") + " ]";
}

std::string int_row_str(const std::vector<Int>& row) {
    std::vector<std::string> parts;
    for (const Int& v : row) parts.push_back(v.get_str());
    return "[ " + join(parts, ", ") + " ]";
}

void print_rat_matrix(std::ostringstream& out, const RatMatrix& m) {
    for (const auto& row : m) out << "  " << rat_row_str(row) << "\n";
}

void print_int_matrix(std::ostringstream& out, const IntMatrix& m) {
    for (const auto& row : m) out << "  " << int_row_str(row) << "\n";
}

ordered_json rat_matrix_json(const RatMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : m) {
        ordered_json r = ordered_json::array();
        for (const Rat& v : row) r.push_back(to_string(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

ordered_json int_matrix_json(const IntMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : m) {
        ordered_json r = ordered_json::array();
        for (const Int& v : row) r.push_back(int_json(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

ordered_json ambiguous_json(const RoundedMatrix& r) {
    ordered_json list = ordered_json::array();
    for (const auto& [i, j] : r.ambiguous) list.push_back(ordered_json::array({i, j}));
    return list;
}

ordered_json skipped_json(const std::vector<std::uint64_t>& skipped) {
    ordered_json list = ordered_json::array();
    for (std::uint64_t p : skipped) list.push_back(p);
    return list;
}

std::string skipped_str(const std::vector<std::uint64_t>& skipped) {
    std::vector<std::string> parts;
    for (std::uint64_t p : skipped) parts.push_back(std::to_string(p));
    return join(parts, " ");
}

void emit_json_text(std::ostringstream& out, const std::string& text) {
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------
// Basis resolution: named presets or an explicit comma-separated list of
// s-polynomials. Kronecker characters are appended after the preset.

TestBasis resolve_basis(const std::string& spec, int degree,
                        const std::optional<PermGroup>& group,
                        const std::vector<long long>& kronecker_ds) {
    TestBasis basis;
    if (spec == "symmetric") {
        basis = TestBasis::symmetric(degree);
    } else if (spec == "reduced") {
        if (!group) throw std::invalid_argument("--basis reduced requires --group");
        basis = reduced_test_basis(*group);
    } else if (spec == "rational") {
        if (!group) throw std::invalid_argument("--basis rational requires --group");
        basis = rational_character_test_basis(*group);
    } else {
        basis = TestBasis::s_polynomials(split_list(spec, ','));
    }
    for (long long d : kronecker_ds) basis.functions.push_back(TestFunction::kronecker(d));
    return TestBasis(basis.functions);
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(std::ostringstream& out, const std::string& poly_text, std::size_t count,
               std::uint64_t start, const std::string& basis_spec,
               const std::vector<long long>& kronecker_ds, const std::string& format) {
    IntPolynomial f = IntPolynomial::parse(poly_text);
    PrimeSample sample = sample_primes(f, count, start);

    std::optional<TestBasis> basis;
    if (!basis_spec.empty() || !kronecker_ds.empty()) {
        basis = resolve_basis(basis_spec.empty() ? "symmetric" : basis_spec, f.degree(),
                              std::nullopt, kronecker_ds);
        for (const TestFunction& fn : basis->functions)
            if (fn.max_variable() > f.degree() - 1)
                throw std::invalid_argument("test function " + fn.label() +
                                            " uses s-variables beyond degree " +
                                            std::to_string(f.degree()));
    }

    if (format == "json") {
        ordered_json doc;
        doc["command"] = "sample";
        doc["polynomial"] = f.to_string();
        doc["degree"] = f.degree();
        if (basis) doc["labels"] = basis->labels();
        ordered_json entries = ordered_json::array();
        for (const SampleEntry& e : sample.entries) {
            ordered_json row;
            row["prime"] = e.prime;
            row["cycle_type"] = format_cycle_type(e.type);
            ordered_json sv = ordered_json::array();
            for (const Int& v : e.point.svector) sv.push_back(int_json(v));
            row["svector"] = std::move(sv);
            if (basis) {
                ordered_json vals = ordered_json::array();
                for (const TestFunction& fn : basis->functions) vals.push_back(to_string(fn(e)));
                row["values"] = std::move(vals);
            }
            entries.push_back(std::move(row));
        }
        doc["entries"] = std::move(entries);
        doc["skipped"] = skipped_json(sample.skipped);
        out << doc.dump(2) << "\n";
        return 0;
    }

    if (format == "csv") {
        out << "prime,cycle_type";
        for (int k = 1; k < f.degree(); ++k) out << ",s" << k;
        if (basis)
            for (const std::string& label : basis->labels()) out << "," << label;
        out << "\n";
        for (const SampleEntry& e : sample.entries) {
            out << e.prime << "," << format_cycle_type(e.type);
            for (const Int& v : e.point.svector) out << "," << v.get_str();
            if (basis)
                for (const TestFunction& fn : basis->functions) out << "," << to_string(fn(e));
            out << "\n";
        }
        return 0;
    }

    out << "polynomial: " << f.to_string() << "\n";
    out << "prime  cycle type    s-vector";
    if (basis) out << "    " << join(basis->labels(), " | ");
    out << "\n";
    for (const SampleEntry& e : sample.entries) {
        char head[64];
        std::snprintf(head, sizeof(head), "%5llu  %-12s", static_cast<unsigned long long>(e.prime),
                      format_cycle_type(e.type).c_str());
        out << head << "  " << svector_str(e.point.svector);
        if (basis) {
            std::vector<std::string> vals;
            for (const TestFunction& fn : basis->functions) vals.push_back(to_string(fn(e)));
            out << "    " << join(vals, " | ");
        }
        out << "\n";
    }
    if (!sample.skipped.empty()) out << "skipped ramified: " << skipped_str(sample.skipped) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// gram

void print_gram_body(std::ostringstream& out, const GramReport& report) {
    out << "empirical:\n";
    print_rat_matrix(out, report.empirical);
    out << "rounded:\n";
    print_int_matrix(out, report.rounded.values);
    if (!report.rounded.ambiguous.empty()) {
        std::vector<std::string> cells;
        for (const auto& [i, j] : report.rounded.ambiguous)
            cells.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
        out << "ambiguous entries: " << join(cells, " ") << "\n";
    }
    if (report.theoretical) {
        out << "theoretical:\n";
        print_rat_matrix(out, *report.theoretical);
    }
    for (const BatchNorms& b : report.batches)
        out << "norms: l2=" << f6(b.norms.l2) << "  l8=" << f6(b.norms.l8)
            << "  linf=" << f6(b.norms.linf) << "\n";
    out << "verdict: " << report.verdict << "\n";
}

ordered_json gram_json_body(const GramReport& report) {
    ordered_json doc;
    doc["labels"] = report.labels;
    doc["empirical"] = rat_matrix_json(report.empirical);
    doc["rounded"] = int_matrix_json(report.rounded.values);
    doc["ambiguous"] = ambiguous_json(report.rounded);
    if (report.theoretical)
        doc["theoretical"] = rat_matrix_json(*report.theoretical);
    else
        doc["theoretical"] = nullptr;
    ordered_json norms = ordered_json::array();
    for (const BatchNorms& b : report.batches) {
        ordered_json n;
        n["primes"] = b.primes;
        n["l2"] = j6(b.norms.l2);
        n["l8"] = j6(b.norms.l8);
        n["linf"] = j6(b.norms.linf);
        norms.push_back(std::move(n));
    }
    doc["norms"] = std::move(norms);
    doc["verdict"] = report.verdict;
    return doc;
}

int cmd_gram(std::ostringstream& out, const std::string& poly_text,
             const std::string& import_group_path, std::size_t primes,
             const std::string& group_name, const std::string& basis_spec,
             const std::vector<long long>& kronecker_ds, int workers,
             const std::string& format) {
    if (poly_text.empty() == import_group_path.empty())
        throw std::invalid_argument("gram needs exactly one of: a polynomial, --import-group");

    // Theoretical-only path over imported class data.
    if (!import_group_path.empty()) {
        ImportedGroup ig = parse_imported_group(slurp(import_group_path));
        TestBasis basis = resolve_basis(basis_spec.empty() ? "symmetric" : basis_spec,
                                        ig.degree, std::nullopt, kronecker_ds);
        RatMatrix m = theoretical_gram(ig, basis);
        if (format == "json") {
            ordered_json doc;
            doc["command"] = "gram";
            doc["group"] = ig.name;
            doc["degree"] = ig.degree;
            doc["order"] = int_json(ig.order);
            doc["labels"] = basis.labels();
            doc["theoretical"] = rat_matrix_json(m);
            out << doc.dump(2) << "\n";
        } else {
            out << "group: " << ig.name << " (degree " << ig.degree << ", order " << ig.order
                << ", " << ig.classes.size() << " classes)\n";
            out << "basis: " << join(basis.labels(), " | ") << "\n";
            out << "theoretical:\n";
            print_rat_matrix(out, m);
        }
        return 0;
    }

    IntPolynomial f = IntPolynomial::parse(poly_text);
    std::optional<PermGroup> group;
    if (!group_name.empty()) group = catalog_group(group_name);
    TestBasis basis = resolve_basis(basis_spec.empty() ? "symmetric" : basis_spec, f.degree(),
                                    group, kronecker_ds);

    std::optional<RatMatrix> target;
    if (group) target = theoretical_gram(*group, basis);

    PrimeSample sample = sample_primes(f, primes);
    GramReport report = gram_report(sample, basis, target, workers);

    if (format == "json") {
        ordered_json doc;
        doc["command"] = "gram";
        doc["polynomial"] = f.to_string();
        if (group) doc["group"] = group->name();
        doc["primes"] = sample.entries.size();
        doc["skipped"] = skipped_json(sample.skipped);
        ordered_json body = gram_json_body(report);
        doc.update(body);
        out << doc.dump(2) << "\n";
        return 0;
    }

    out << "polynomial: " << f.to_string() << "\n";
    if (group) out << "group: " << group->name() << "\n";
    out << "basis: " << join(report.labels, " | ") << "\n";
    out << "primes used: " << sample.entries.size();
    if (!sample.skipped.empty()) out << " (skipped " << skipped_str(sample.skipped) << ")";
    out << "\n";
    print_gram_body(out, report);
    return 0;
}

// ---------------------------------------------------------------------------
// convergence

int cmd_convergence(std::ostringstream& out, const std::string& poly_text,
                    const std::string& group_name, const std::string& basis_spec,
                    std::size_t increment, std::size_t batches, int workers,
                    const std::string& format) {
    IntPolynomial f = IntPolynomial::parse(poly_text);
    PermGroup group = catalog_group(group_name);
    TestBasis basis = resolve_basis(basis_spec.empty() ? "reduced" : basis_spec, f.degree(),
                                    group, {});
    RatMatrix target = theoretical_gram(group, basis);
    GramReport report = convergence_run(f, target, basis, increment, batches, workers);

    if (format == "json") {
        ordered_json doc;
        doc["command"] = "convergence";
        doc["polynomial"] = f.to_string();
        doc["group"] = group.name();
        doc["increment"] = increment;
        doc["batches"] = batches;
        ordered_json body = gram_json_body(report);
        doc.update(body);
        doc["stable_batch"] = report.stable_batch;
        doc["horizon_limited"] = report.horizon_limited;
        out << doc.dump(2) << "\n";
        return 0;
    }

    out << "polynomial: " << f.to_string() << "\n";
    out << "group: " << group.name() << "\n";
    out << "basis: " << join(report.labels, " | ") << "\n";
    out << "batch  primes        l2        l8      linf\n";
    for (std::size_t b = 0; b < report.batches.size(); ++b) {
        char line[128];
        std::snprintf(line, sizeof(line), "%5zu  %6zu  %s  %s  %s", b + 1,
                      report.batches[b].primes, f6(report.batches[b].norms.l2).c_str(),
                      f6(report.batches[b].norms.l8).c_str(),
                      f6(report.batches[b].norms.linf).c_str());
        out << line << "\n";
    }
    out << "verdict: " << report.verdict << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// identify

std::vector<PermGroup> resolve_candidates(const std::string& spec) {
    std::vector<std::string> names;
    if (spec.rfind("deg", 0) == 0) {
        int degree = std::stoi(spec.substr(3));
        names = catalog_names_for_degree(degree);
        if (names.empty())
            throw std::invalid_argument("no catalog groups of degree " + std::to_string(degree));
    } else {
        names = split_list(spec, ',');
    }
    std::vector<PermGroup> out;
    for (const std::string& name : names) out.push_back(catalog_group(name));
    return out;
}

int cmd_identify(std::ostringstream& out, const std::string& poly_text,
                 const std::string& candidate_spec, std::size_t primes, int degree_bound,
                 int workers, const std::string& format) {
    IntPolynomial f = IntPolynomial::parse(poly_text);
    std::vector<PermGroup> candidates = resolve_candidates(candidate_spec);
    IdentifyReport report = identify_group(f, candidates, primes, degree_bound, workers);

    const char* verdict = report.exit_code == 0    ? "unique consistent candidate"
                          : report.exit_code == 10 ? "several consistent candidates"
                                                   : "no consistent candidate";

    if (format == "json") {
        ordered_json doc;
        doc["command"] = "identify";
        doc["polynomial"] = f.to_string();
        doc["primes"] = report.primes;
        ordered_json list = ordered_json::array();
        for (const CandidateVerdict& v : report.verdicts) {
            ordered_json row;
            row["name"] = v.name;
            row["excluded"] = v.excluded;
            if (v.witness) {
                ordered_json w;
                w["prime"] = v.witness->prime;
                w["generator"] = v.witness->generator.to_string();
                w["value"] = to_string(v.witness->value);
                row["witness"] = std::move(w);
            } else {
                row["witness"] = nullptr;
            }
            if (v.excluded)
                row["linf"] = nullptr;
            else
                row["linf"] = j6(v.final_linf);
            row["consistent"] = v.consistent;
            row["indistinguishable"] = v.indistinguishable;
            list.push_back(std::move(row));
        }
        doc["candidates"] = std::move(list);
        doc["verdict"] = verdict;
        doc["exit"] = report.exit_code;
        out << doc.dump(2) << "\n";
        return report.exit_code;
    }

    out << "polynomial: " << f.to_string() << "\n";
    out << "primes used: " << report.primes << "\n";
    for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
        const CandidateVerdict& v = report.verdicts[i];
        char head[64];
        std::snprintf(head, sizeof(head), "%3zu. %-8s", i + 1, v.name.c_str());
        out << head;
        if (v.excluded) {
            out << "excluded";
            if (v.witness)
                out << "      witness p=" << v.witness->prime << ": "
                    << v.witness->generator.to_string() << " = " << to_string(v.witness->value);
        } else {
            out << (v.consistent ? "consistent" : "inconsistent") << "  linf=" << f6(v.final_linf);
            if (v.indistinguishable) out << "  [indistinguishable]";
        }
        out << "\n";
    }
    out << "verdict: " << verdict << "\n";
    return report.exit_code;
}

// ---------------------------------------------------------------------------
// kernel

int cmd_kernel(std::ostringstream& out, const std::string& group_name, int degree_bound,
               const std::string& format) {
    PermGroup group = catalog_group(group_name);
    KernelIdealBasis ideal = kernel_ideal(group, degree_bound);

    if (format == "json") {
        ordered_json doc;
        doc["command"] = "kernel";
        doc["group"] = group.name();
        doc["degree"] = group.degree();
        doc["degree_bound"] = ideal.degree_bound;
        ordered_json gens = ordered_json::array();
        for (const SPolynomial& g : ideal.generators) gens.push_back(g.to_string());
        doc["generators"] = std::move(gens);
        out << doc.dump(2) << "\n";
        return 0;
    }

    out << "group: " << group.name() << " (degree " << group.degree() << ", order "
        << group.order() << ")\n";
    out << "degree bound: " << ideal.degree_bound << "\n";
    out << "kernel ideal generators:\n";
    for (const SPolynomial& g : ideal.generators) out << "  " << g.to_string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// chartable

void print_cyclotomic_table(std::ostringstream& out, const CharacterTable& table) {
    out << "group: " << table.group_name << " (order " << table.group_order << ", exponent "
        << table.exponent << ")\n";
    std::vector<std::string> classes;
    for (const TableClass& c : table.classes)
        classes.push_back(format_cycle_type(c.cycle_type) + " (" + to_string(c.size) + ")");
    out << "classes: " << join(classes, " | ") << "\n";
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        std::vector<std::string> vals;
        for (const Cyclotomic& v : table.values[i]) vals.push_back(v.to_string());
        out << "chi_" << i + 1 << ": " << join(vals, ", ") << "\n";
    }
}

void print_rational_table(std::ostringstream& out, const RationalCharacterTable& table) {
    out << "rational character table: " << table.group_name << " (order " << table.group_order
        << ", rank " << table.rank() << ")\n";
    std::vector<std::string> classes;
    for (const RationalClass& c : table.classes)
        classes.push_back(format_cycle_type(c.cycle_type) + " (" + c.size.get_str() + ")");
    out << "classes: " << join(classes, " | ") << "\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        std::vector<std::string> vals;
        for (const Int& v : table.rows[i]) vals.push_back(v.get_str());
        out << "row_" << i + 1 << " (orbit " << table.orbit_sizes[i] << "): " << join(vals, ", ")
            << "\n";
    }
}

int cmd_chartable(std::ostringstream& out, const std::string& group_name,
                  const std::string& group_file, const std::string& generators_spec, int degree,
                  const std::string& custom_name, std::size_t cap,
                  const std::string& import_path, bool rational, const std::string& format) {
    int sources = (!group_name.empty()) + (!group_file.empty()) + (!generators_spec.empty()) +
                  (!import_path.empty());
    if (sources != 1)
        throw std::invalid_argument(
            "chartable needs exactly one of: --group, --group-file, --generators, --import");

    if (!import_path.empty()) {
        ImportedTable imported = import_table_json(slurp(import_path));
        if (imported.is_rational) {
            if (format == "json")
                emit_json_text(out, export_rational_table_json(imported.rational));
            else
                print_rational_table(out, imported.rational);
        } else {
            RationalCharacterTable rt;
            bool have_rational = false;
            if (rational) {
                rt = rational_character_table(imported.cyclotomic);
                have_rational = true;
            }
            if (format == "json")
                emit_json_text(out, have_rational ? export_rational_table_json(rt)
                                                  : export_table_json(imported.cyclotomic));
            else if (have_rational)
                print_rational_table(out, rt);
            else
                print_cyclotomic_table(out, imported.cyclotomic);
        }
        return 0;
    }

    PermGroup group = [&] {
        if (!group_name.empty()) return catalog_group(group_name);
        if (!group_file.empty()) return load_group_json(slurp(group_file), cap);
        if (degree <= 0)
            throw std::invalid_argument("--generators requires --degree");
        std::vector<Permutation> gens;
        for (const std::string& text : split_list(generators_spec, ';'))
            gens.push_back(Permutation::parse_cycles(text, degree));
        return PermGroup::close(std::move(gens),
                                custom_name.empty() ? "custom" : custom_name, cap);
    }();

    CharacterTable table = character_table(group);
    if (rational) {
        RationalCharacterTable rt = rational_character_table(table);
        if (format == "json")
            emit_json_text(out, export_rational_table_json(rt));
        else
            print_rational_table(out, rt);
    } else {
        if (format == "json")
            emit_json_text(out, export_table_json(table));
        else
            print_cyclotomic_table(out, table);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// compare

int cmd_compare(std::ostringstream& out, const std::string& poly_f_text,
                const std::string& poly_g_text, std::size_t primes,
                const std::string& basis_spec, const std::string& basis_f_spec,
                const std::string& basis_g_spec, int workers, const std::string& format) {
    IntPolynomial f = IntPolynomial::parse(poly_f_text);
    IntPolynomial g = IntPolynomial::parse(poly_g_text);

    TestBasis basis_f, basis_g;
    if (!basis_f_spec.empty() || !basis_g_spec.empty()) {
        if (basis_f_spec.empty() || basis_g_spec.empty())
            throw std::invalid_argument("--basis-f and --basis-g must be given together");
        basis_f = resolve_basis(basis_f_spec, f.degree(), std::nullopt, {});
        basis_g = resolve_basis(basis_g_spec, g.degree(), std::nullopt, {});
    } else if (basis_spec == "a5-rational") {
        if (f.degree() != 5 || g.degree() != 6)
            throw std::invalid_argument(
                "--basis a5-rational expects a quintic and a sextic (in that order)");
        basis_f = rational_character_test_basis(catalog_group("A5x5"));
        basis_g = rational_character_test_basis(catalog_group("A5x6"));
    } else if (basis_spec.empty() || basis_spec == "symmetric") {
        int shared = std::min(f.degree(), g.degree());
        basis_f = TestBasis::symmetric(shared);
        basis_g = TestBasis::symmetric(shared);
    } else {
        basis_f = resolve_basis(basis_spec, std::min(f.degree(), g.degree()), std::nullopt, {});
        basis_g = basis_f;
    }

    JointSample sample = sample_primes_joint(f, g, primes);
    RatMatrix m = joint_gram(sample, basis_f, basis_g, workers);
    RoundedMatrix rounded = round_matrix(m);

    if (format == "json") {
        ordered_json doc;
        doc["command"] = "compare";
        doc["f"] = f.to_string();
        doc["g"] = g.to_string();
        doc["primes"] = sample.entries.size();
        doc["skipped"] = skipped_json(sample.skipped);
        doc["labels_f"] = basis_f.labels();
        doc["labels_g"] = basis_g.labels();
        doc["empirical"] = rat_matrix_json(m);
        doc["rounded"] = int_matrix_json(rounded.values);
        doc["ambiguous"] = ambiguous_json(rounded);
        out << doc.dump(2) << "\n";
        return 0;
    }

    out << "f: " << f.to_string() << "\n";
    out << "g: " << g.to_string() << "\n";
    out << "basis f: " << join(basis_f.labels(), " | ") << "\n";
    out << "basis g: " << join(basis_g.labels(), " | ") << "\n";
    out << "primes used: " << sample.entries.size();
    if (!sample.skipped.empty()) out << " (skipped " << skipped_str(sample.skipped) << ")";
    out << "\n";
    out << "joint matrix:\n";
    print_rat_matrix(out, m);
    out << "rounded:\n";
    print_int_matrix(out, rounded.values);
    if (!rounded.ambiguous.empty()) {
        std::vector<std::string> cells;
        for (const auto& [i, j] : rounded.ambiguous)
            cells.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
        out << "ambiguous entries: " << join(cells, " ") << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// catalog

int cmd_catalog(std::ostringstream& out, int degree, const std::string& format) {
    std::vector<std::string> names =
        degree > 0 ? catalog_names_for_degree(degree) : catalog_names();

    if (format == "json") {
        ordered_json doc;
        doc["command"] = "catalog";
        ordered_json list = ordered_json::array();
        for (const std::string& name : names) {
            PermGroup g = catalog_group(name);
            ordered_json row;
            row["name"] = g.name();
            row["degree"] = g.degree();
            row["order"] = g.order();
            row["classes"] = g.class_count();
            list.push_back(std::move(row));
        }
        doc["groups"] = std::move(list);
        out << doc.dump(2) << "\n";
        return 0;
    }

    out << "name      degree    order  classes\n";
    for (const std::string& name : names) {
        PermGroup g = catalog_group(name);
        char line[96];
        std::snprintf(line, sizeof(line), "%-8s  %6d  %7ld  %7d", g.name().c_str(), g.degree(),
                      g.order(), g.class_count());
        out << line << "\n";
    }
    return 0;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CliResult result;
    std::ostringstream out;

    CLI::App app{"Galois group statistics from Frobenius factorization data"};
    app.name("galstat");
    app.require_subcommand(1);

    // sample
    std::string s_poly, s_basis, s_format = "table";
    std::size_t s_count = 16;
    std::uint64_t s_start = 2;
    std::vector<long long> s_kronecker;
    CLI::App* sample = app.add_subcommand(
        "sample", "List factorization types and s-vectors at unramified primes");
    sample->add_option("polynomial", s_poly, "Integer polynomial, e.g. \"x^4+x+1\"")->required();
    sample->add_option("--count", s_count, "Number of unramified primes");
    sample->add_option("--start", s_start, "Smallest prime considered");
    sample->add_option("--basis", s_basis,
                       "Also evaluate test functions: symmetric | comma-separated s-polynomials");
    sample->add_option("--kronecker", s_kronecker,
                       "Append a Kronecker character of this fundamental discriminant");
    sample->add_option("--format", s_format, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    // gram
    std::string g_poly, g_group, g_basis, g_import, g_format = "table";
    std::size_t g_primes = 80;
    std::vector<long long> g_kronecker;
    int g_workers = 1;
    CLI::App* gram = app.add_subcommand(
        "gram", "Empirical Gram matrix of test functions over sampled primes");
    gram->add_option("polynomial", g_poly, "Integer polynomial");
    gram->add_option("--primes,--count", g_primes, "Sample size");
    gram->add_option("--group", g_group, "Catalog group supplying the theoretical target");
    gram->add_option("--basis", g_basis,
                     "symmetric | reduced | rational | comma-separated s-polynomials");
    gram->add_option("--kronecker", g_kronecker,
                     "Append a Kronecker character (empirical runs only)");
    gram->add_option("--import-group", g_import,
                     "Class-data JSON file; computes the theoretical Gram only");
    gram->add_option("--workers", g_workers, "Parallel workers (identical results for all)");
    gram->add_option("--format", g_format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));

    // convergence
    std::string c_poly, c_group, c_basis, c_format = "table";
    std::size_t c_increment = 128, c_batches = 8;
    int c_workers = 1;
    CLI::App* convergence = app.add_subcommand(
        "convergence", "Cumulative batch norms against a group's theoretical Gram");
    convergence->add_option("polynomial", c_poly, "Integer polynomial")->required();
    convergence->add_option("--group", c_group, "Catalog group (theoretical target)")->required();
    convergence->add_option("--basis", c_basis,
                            "symmetric | reduced | rational | explicit list (default reduced)");
    convergence->add_option("--increment", c_increment, "Primes per batch");
    convergence->add_option("--batches", c_batches, "Number of batches");
    convergence->add_option("--workers", c_workers, "Parallel workers");
    convergence->add_option("--format", c_format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));

    // identify
    std::string i_poly, i_candidates, i_format = "table";
    std::size_t i_primes = 600;
    int i_bound = 2, i_workers = 1;
    CLI::App* identify = app.add_subcommand(
        "identify", "Rank candidate Galois groups by kernel exclusion and Gram consistency");
    identify->add_option("polynomial", i_poly, "Integer polynomial")->required();
    identify
        ->add_option("--candidates", i_candidates,
                     "Comma-separated catalog names, or degN for all catalog groups of degree N")
        ->required();
    identify->add_option("--primes,--count", i_primes, "Sample size");
    identify->add_option("--degree-bound", i_bound, "Kernel ideal degree bound");
    identify->add_option("--workers", i_workers, "Parallel workers");
    identify->add_option("--format", i_format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));

    // kernel
    std::string k_group, k_format = "table";
    int k_bound = 2;
    CLI::App* kernel = app.add_subcommand(
        "kernel", "Generators of a group's kernel ideal (provable-exclusion certificates)");
    kernel->add_option("--group", k_group, "Catalog group")->required();
    kernel->add_option("--degree-bound", k_bound, "Generator degree bound");
    kernel->add_option("--format", k_format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));

    // chartable
    std::string t_group, t_group_file, t_generators, t_name, t_import, t_format = "table";
    int t_degree = 0;
    std::size_t t_cap = kDefaultEnumerationCap;
    bool t_rational = false;
    CLI::App* chartable =
        app.add_subcommand("chartable", "Irreducible or rational character table of a group");
    chartable->add_option("--group", t_group, "Catalog group");
    chartable->add_option("--group-file", t_group_file, "Group JSON file (name/degree/generators)");
    chartable->add_option("--generators", t_generators,
                          "Semicolon-separated cycle strings, e.g. \"(1,2);(1,2,3,4)\"");
    chartable->add_option("--degree", t_degree, "Degree for --generators");
    chartable->add_option("--name", t_name, "Name for --generators");
    chartable->add_option("--cap", t_cap, "Enumeration cap (exit 4 when exceeded)");
    chartable->add_option("--import", t_import, "Pre-computed character table JSON");
    chartable->add_flag("--rational", t_rational, "Fuse Galois orbits into the rational table");
    chartable->add_option("--format", t_format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));

    // compare
    std::string p_f, p_g, p_basis, p_basis_f, p_basis_g, p_format = "table";
    std::size_t p_primes = 1000;
    int p_workers = 1;
    CLI::App* compare = app.add_subcommand(
        "compare", "Joint Gram matrix of two polynomials over their shared primes");
    compare->add_option("f", p_f, "First polynomial")->required();
    compare->add_option("g", p_g, "Second polynomial")->required();
    compare->add_option("--primes,--count", p_primes, "Sample size");
    compare->add_option("--basis", p_basis, "symmetric | a5-rational | explicit list (both sides)");
    compare->add_option("--basis-f", p_basis_f, "Explicit basis for f");
    compare->add_option("--basis-g", p_basis_g, "Explicit basis for g");
    compare->add_option("--workers", p_workers, "Parallel workers");
    compare->add_option("--format", p_format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));

    // catalog
    std::string l_format = "table";
    int l_degree = 0;
    CLI::App* catalog = app.add_subcommand("catalog", "List bundled groups");
    catalog->add_option("--degree", l_degree, "Restrict to one degree");
    catalog->add_option("--format", l_format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));

    std::vector<const char*> argv;
    argv.push_back("galstat");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        result.output = out.str();
        result.exit_code = 0;
        return result;
    } catch (const CLI::ParseError& e) {
        out << "error: " << e.what() << "\n";
        result.output = out.str();
        result.exit_code = 2;
        return result;
    }

    try {
        if (sample->parsed())
            result.exit_code =
                cmd_sample(out, s_poly, s_count, s_start, s_basis, s_kronecker, s_format);
        else if (gram->parsed())
            result.exit_code = cmd_gram(out, g_poly, g_import, g_primes, g_group, g_basis,
                                        g_kronecker, g_workers, g_format);
        else if (convergence->parsed())
            result.exit_code = cmd_convergence(out, c_poly, c_group, c_basis, c_increment,
                                               c_batches, c_workers, c_format);
        else if (identify->parsed())
            result.exit_code =
                cmd_identify(out, i_poly, i_candidates, i_primes, i_bound, i_workers, i_format);
        else if (kernel->parsed())
            result.exit_code = cmd_kernel(out, k_group, k_bound, k_format);
        else if (chartable->parsed())
            result.exit_code = cmd_chartable(out, t_group, t_group_file, t_generators, t_degree,
                                             t_name, t_cap, t_import, t_rational, t_format);
        else if (compare->parsed())
            result.exit_code = cmd_compare(out, p_f, p_g, p_primes, p_basis, p_basis_f, p_basis_g,
                                           p_workers, p_format);
        else if (catalog->parsed())
            result.exit_code = cmd_catalog(out, l_degree, l_format);
    } catch (const GroupTooLargeError& e) {
        out << "error: " << e.what() << "\n";
        result.exit_code = 4;
    } catch (const std::invalid_argument& e) {
        out << "error: " << e.what() << "\n";
        result.exit_code = 2;
    } catch (const std::domain_error& e) {
        out << "error: " << e.what() << "\n";
        result.exit_code = 3;
    } catch (const std::runtime_error& e) {
        out << "error: " << e.what() << "\n";
        result.exit_code = 3;
    }

    result.output = out.str();
    return result;
}

}  // namespace galstat
