// Command-line front end: spectral decomposition, adjoints, Gram-Schmidt,
// truncated Witt arithmetic, and one-dimensional isocrystal classification
// on JSON documents. Exit codes: 0 ok, 1 parse error, 2 precondition
// failure, 3 coefficient field too small.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "semilin/inner_product.hpp"
#include "semilin/isocrystal.hpp"
#include "semilin/spectral.hpp"

using json = nlohmann::json;
using namespace semilin;
using Cx = std::complex<double>;

namespace {

// fixed 17-significant-digit formatting keeps outputs byte-identical
// across runs and round-trips doubles exactly
std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json read_doc(const std::string& path) {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    return json::parse(in);
}

double finite_number(const json& e, const char* what) {
    if (!e.is_number())
        throw ParseError(std::string(what) + " must be a number");
    const double v = e.get<double>();
    if (!std::isfinite(v))
        throw ParseError(std::string(what) + " must be finite");
    return v;
}

template <class K>
K entry_from(const json& e);

template <>
double entry_from<double>(const json& e) {
    return finite_number(e, "real matrix entry");
}

template <>
Cx entry_from<Cx>(const json& e) {
    if (!e.is_array() || e.size() != 2)
        throw ParseError("complex entries are [re, im] pairs");
    return Cx(finite_number(e[0], "complex entry"),
              finite_number(e[1], "complex entry"));
}

std::string entry_to(double x) { return fmt17(x); }
std::string entry_to(const Cx& x) {
    return "[" + fmt17(x.real()) + "," + fmt17(x.imag()) + "]";
}

template <class K>
Matrix<K> matrix_from(const json& doc) {
    if (!doc.contains("rows") || !doc["rows"].is_array() ||
        doc["rows"].empty())
        throw ParseError("matrix document needs a nonempty \"rows\" array");
    const json& rows = doc["rows"];
    const std::size_t m = rows.size();
    if (!rows[0].is_array() || rows[0].empty())
        throw ParseError("matrix rows must be nonempty arrays");
    const std::size_t n = rows[0].size();
    Matrix<K> a(m, n, K(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw ParseError("matrix rows must all have the same length");
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = entry_from<K>(rows[i][j]);
    }
    return a;
}

template <class K>
std::string rows_to(const Matrix<K>& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i) s += ",";
        s += "[";
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) s += ",";
            s += entry_to(a(i, j));
        }
        s += "]";
    }
    return s + "]";
}

template <class K>
std::string rows_to(const std::vector<Vector<K>>& vs) {
    std::string s = "[";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ",";
        s += "[";
        for (std::size_t j = 0; j < vs[i].size(); ++j) {
            if (j) s += ",";
            s += entry_to(vs[i][j]);
        }
        s += "]";
    }
    return s + "]";
}

bool is_complex_doc(const json& doc) {
    if (!doc.contains("scalar") || !doc["scalar"].is_string())
        throw ParseError("document needs \"scalar\": \"real\" or \"complex\"");
    const std::string s = doc["scalar"].get<std::string>();
    if (s == "real") return false;
    if (s == "complex") return true;
    throw ParseError("unknown scalar tag: " + s);
}

template <class K>
InnerProductSpace<K> space_from(std::size_t dim, const std::string& gram_path,
                                bool expect_complex) {
    if (gram_path.empty()) return InnerProductSpace<K>::standard(dim);
    const json gdoc = read_doc(gram_path);
    if (is_complex_doc(gdoc) != expect_complex)
        throw ContextMismatchError(
            "gram matrix scalar tag differs from the input's");
    return InnerProductSpace<K>::with_gram(matrix_from<K>(gdoc));
}

// --- spectral ---

template <class K>
std::string spectral_out(const json& doc, bool self_adjoint, double tol,
                         const char* scalar_name) {
    const Matrix<K> t = matrix_from<K>(doc);
    const auto space = InnerProductSpace<K>::standard(t.rows());
    SpectralOptions opts;
    opts.self_adjoint_tol = tol;
    opts.normal_tol = tol;
    const Eigendecomposition<K> dec =
        self_adjoint ? diagonalize_self_adjoint(space, t, opts)
                     : diagonalize_normal(space, t, opts);

    std::string ev = "[", mult = "[";
    for (std::size_t g = 0; g < dec.group_count(); ++g) {
        if (g) {
            ev += ",";
            mult += ",";
        }
        ev += entry_to(dec.eigenvalues[g]);
        mult += std::to_string(dec.multiplicities[g]);
    }
    ev += "]";
    mult += "]";

    std::string s = "{\"scalar\":\"";
    s += scalar_name;
    s += "\",\"eigenvalues\":" + ev + ",\"multiplicities\":" + mult;
    s += ",\"unitary\":" + rows_to(dec.phi);
    s += ",\"ortho_residual\":" + fmt17(dec.ortho_residual);
    s += ",\"reconstruction_residual\":" + fmt17(dec.reconstruction_residual);
    return s + "}";
}

// --- adjoint / gram-schmidt ---

template <class K>
std::string adjoint_out(const json& doc, const std::string& gram_dom,
                        const std::string& gram_cod, bool cx,
                        const char* scalar_name) {
    const Matrix<K> a = matrix_from<K>(doc);
    const auto dom = space_from<K>(a.cols(), gram_dom, cx);
    const auto cod = space_from<K>(a.rows(), gram_cod, cx);
    const Matrix<K> as = adjoint(dom, cod, a);
    std::string s = "{\"scalar\":\"";
    s += scalar_name;
    return s + "\",\"adjoint\":" + rows_to(as) + "}";
}

template <class K>
std::string gram_schmidt_out(const json& doc, const std::string& gram_path,
                             bool cx, const char* scalar_name) {
    const Matrix<K> a = matrix_from<K>(doc); // rows are the input vectors
    const auto space = space_from<K>(a.cols(), gram_path, cx);
    std::vector<Vector<K>> vs;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Vector<K> v(a.cols());
        for (std::size_t j = 0; j < a.cols(); ++j) v[j] = a(i, j);
        vs.push_back(std::move(v));
    }
    const auto ortho = gram_schmidt(space, vs);
    std::string s = "{\"scalar\":\"";
    s += scalar_name;
    return s + "\",\"vectors\":" + rows_to(ortho) + "}";
}

// --- witt / classify ---

int int_field(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer())
        throw ParseError(std::string("document needs integer \"") + key +
                         "\"");
    return doc[key].get<int>();
}

FieldSpec::Ptr field_from(const json& doc, const std::string& field_flag) {
    FieldSpec::Ptr from_doc, from_flag;
    if (doc.contains("field")) {
        const json& f = doc["field"];
        const int p = int_field(f, "p");
        const int r = int_field(f, "r");
        if (f.contains("modulus")) {
            if (!f["modulus"].is_array())
                throw ParseError("field modulus must be an array");
            std::vector<int> mod;
            for (const auto& c : f["modulus"]) {
                if (!c.is_number_integer())
                    throw ParseError("field modulus entries must be integers");
                mod.push_back(c.get<int>());
            }
            from_doc = FieldSpec::make(p, r, std::move(mod));
        } else {
            from_doc = FieldSpec::make(p, r);
        }
    }
    if (!field_flag.empty()) {
        std::vector<int> parts;
        std::stringstream ss(field_flag);
        std::string tok;
        while (std::getline(ss, tok, ','))
            try {
                parts.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ParseError("--field expects p,r[,modulus coefficients]");
            }
        if (parts.size() < 2)
            throw ParseError("--field expects p,r[,modulus coefficients]");
        if (parts.size() == 2)
            from_flag = FieldSpec::make(parts[0], parts[1]);
        else
            from_flag = FieldSpec::make(
                parts[0], parts[1],
                std::vector<int>(parts.begin() + 2, parts.end()));
    }
    if (from_doc && from_flag && !from_doc->same(*from_flag))
        throw ContextMismatchError(
            "--field disagrees with the document's field block");
    if (from_doc) return from_doc;
    if (from_flag) return from_flag;
    throw ParseError("no field: give a \"field\" block or --field p,r[,...]");
}

WittContext::Ptr context_from(const json& doc, const std::string& field_flag,
                              int precision_flag) {
    const auto spec = field_from(doc, field_flag);
    const int doc_p = int_field(doc, "p");
    if (doc_p != spec->p())
        throw ParseError("document p disagrees with the field's p");
    const int doc_n = int_field(doc, "n");
    int n = doc_n;
    if (precision_flag > 0) {
        if (precision_flag > doc_n)
            throw PrecisionError(
                "--precision exceeds the document's coefficient count");
        n = precision_flag;
    }
    return WittContext::make(spec, n);
}

WittVector witt_from(const json& doc, const WittContext::Ptr& ctx) {
    if (!doc.contains("coeffs") || !doc["coeffs"].is_array())
        throw ParseError("witt document needs a \"coeffs\" array");
    const json& cs = doc["coeffs"];
    if (static_cast<int>(cs.size()) < ctx->n())
        throw ParseError("witt document has fewer coefficients than n");
    std::vector<FFElement> coeffs;
    for (int i = 0; i < ctx->n(); ++i) {
        const json& c = cs[static_cast<std::size_t>(i)];
        if (!c.is_array() || static_cast<int>(c.size()) != ctx->field()->r())
            throw ParseError(
                "each witt coefficient is a length-r digit list");
        std::vector<int> digits;
        for (const auto& d : c) {
            if (!d.is_number_integer())
                throw ParseError("witt coefficient digits must be integers");
            digits.push_back(d.get<int>());
        }
        coeffs.push_back(FFElement::from_coeffs(ctx->field(), digits));
    }
    return WittVector(ctx, std::move(coeffs));
}

std::string coeff_list(const FFElement& c) {
    std::string s = "[";
    const auto digits = c.coeffs();
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(digits[i]);
    }
    return s + "]";
}

std::string field_block(const FieldSpec::Ptr& spec) {
    std::string s = "{\"p\":" + std::to_string(spec->p()) +
                    ",\"r\":" + std::to_string(spec->r()) + ",\"modulus\":[";
    const auto& mod = spec->modulus();
    for (std::size_t i = 0; i < mod.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(mod[i]);
    }
    return s + "]}";
}

std::string coeff_lists(const WittVector& w) {
    std::string s = "[";
    for (int i = 0; i < w.context()->n(); ++i) {
        if (i) s += ",";
        s += coeff_list(w.coeff(i));
    }
    return s + "]";
}

std::string witt_doc(const WittVector& w) {
    const auto& ctx = w.context();
    return "{\"p\":" + std::to_string(ctx->p()) +
           ",\"n\":" + std::to_string(ctx->n()) +
           ",\"field\":" + field_block(ctx->field()) +
           ",\"coeffs\":" + coeff_lists(w) + "}";
}

// compact single-line form used where a Witt vector is a value inside
// another document, e.g. `p=2 n=3 field=F4 coeffs=[[0,1],[1,0],[0,0]]`
std::string witt_text(const WittVector& w) {
    const auto& ctx = w.context();
    return "p=" + std::to_string(ctx->p()) + " n=" + std::to_string(ctx->n()) +
           " field=" + ctx->field()->name() + " coeffs=" + coeff_lists(w);
}

std::string classify_out(const json& doc, const std::string& field_flag,
                         int precision_flag) {
    const auto ctx = context_from(doc, field_flag, precision_flag);
    const int m = int_field(doc, "m");
    const auto c = FractionFieldElement::from_witt(m, witt_from(doc, ctx));
    if (c.is_zero())
        throw ZeroVectorError("cannot classify the zero structure constant");

    const IsocrystalEquivalence eq = classify(Isocrystal1D(c));
    const WittVector unit(ctx, eq.y.unit_coeffs());
    return "{\"slope\":" + std::to_string(eq.slope) + ",\"unit\":\"" +
           witt_text(unit) + "\",\"verified\":" +
           (eq.report.verified ? "true" : "false") +
           ",\"precision\":" + std::to_string(eq.report.precision) + "}";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sigma-semilinear maps: spectral tools, Witt vectors, "
                 "isocrystal classification"};
    app.require_subcommand(1);

    std::string input, input_b;
    std::string gram_path, gram_dom, gram_cod, field_flag;
    double tol = 1e-8;
    int precision_flag = 0;
    bool flag_self_adjoint = false, flag_normal = false;

    auto* spectral = app.add_subcommand(
        "spectral", "unitary diagonalization of a matrix document");
    spectral->add_option("input", input, "matrix document path or -")
        ->required();
    auto* sa = spectral->add_flag("--self-adjoint", flag_self_adjoint,
                                  "expect a self-adjoint operator");
    spectral->add_flag("--normal", flag_normal, "expect a normal operator")
        ->excludes(sa);
    spectral->add_option("--tol", tol, "predicate tolerance");

    auto* adj = app.add_subcommand("adjoint",
                                   "adjoint of a matrix between "
                                   "inner-product spaces");
    adj->add_option("input", input, "matrix document path or -")->required();
    adj->add_option("--gram-domain", gram_dom, "domain gram matrix document");
    adj->add_option("--gram-codomain", gram_cod,
                    "codomain gram matrix document");

    auto* gs = app.add_subcommand("gram-schmidt",
                                  "orthonormalize the rows of a matrix "
                                  "document");
    gs->add_option("input", input, "matrix document path or -")->required();
    gs->add_option("--gram", gram_path, "gram matrix document");

    auto* witt = app.add_subcommand("witt", "truncated Witt arithmetic");
    witt->require_subcommand(1);
    auto* wadd = witt->add_subcommand("add", "sum of two witt documents");
    auto* wmul = witt->add_subcommand("mul", "product of two witt documents");
    auto* wfrob = witt->add_subcommand("frobenius", "coefficientwise p-th "
                                                    "power");
    auto* wval = witt->add_subcommand("valuation",
                                      "index of the first nonzero "
                                      "coefficient");
    for (auto* sub : {wadd, wmul, wfrob, wval}) {
        sub->add_option("input", input, "witt document path or -")->required();
        sub->add_option("--precision", precision_flag,
                        "truncate to this many coefficients");
        sub->add_option("--field", field_flag,
                        "p,r[,modulus] when the document has no field block");
    }
    for (auto* sub : {wadd, wmul})
        sub->add_option("input_b", input_b, "second witt document")
            ->required();

    auto* cls = app.add_subcommand(
        "classify", "slope and unit of a one-dimensional isocrystal");
    cls->add_option("input", input,
                    "witt document with \"m\" (structure constant p^m * w)")
        ->required();
    cls->add_option("--precision", precision_flag,
                    "truncate to this many coefficients");
    cls->add_option("--field", field_flag,
                    "p,r[,modulus] when the document has no field block");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        std::string out;
        if (spectral->parsed()) {
            if (!flag_self_adjoint && !flag_normal)
                throw ParseError(
                    "spectral needs --self-adjoint or --normal");
            const json doc = read_doc(input);
            out = is_complex_doc(doc)
                      ? spectral_out<Cx>(doc, flag_self_adjoint, tol,
                                         "complex")
                      : spectral_out<double>(doc, flag_self_adjoint, tol,
                                             "real");
        } else if (adj->parsed()) {
            const json doc = read_doc(input);
            out = is_complex_doc(doc)
                      ? adjoint_out<Cx>(doc, gram_dom, gram_cod, true,
                                        "complex")
                      : adjoint_out<double>(doc, gram_dom, gram_cod, false,
                                            "real");
        } else if (gs->parsed()) {
            const json doc = read_doc(input);
            out = is_complex_doc(doc)
                      ? gram_schmidt_out<Cx>(doc, gram_path, true, "complex")
                      : gram_schmidt_out<double>(doc, gram_path, false,
                                                 "real");
        } else if (witt->parsed()) {
            const json doc = read_doc(input);
            const auto ctx = context_from(doc, field_flag, precision_flag);
            const WittVector x = witt_from(doc, ctx);
            if (wadd->parsed() || wmul->parsed()) {
                const json doc_b = read_doc(input_b);
                const auto ctx_b =
                    context_from(doc_b, field_flag, precision_flag);
                const WittVector y = witt_from(doc_b, ctx_b);
                out = witt_doc(wadd->parsed() ? witt_add(x, y)
                                              : witt_mul(x, y));
            } else if (wfrob->parsed()) {
                out = witt_doc(witt_frobenius(x));
            } else {
                const auto v = valuation(x);
                out = "{\"valuation\":" +
                      (v ? std::to_string(*v) : std::string("null")) + "}";
            }
        } else {
            out = classify_out(read_doc(input), field_flag, precision_flag);
        }
        std::cout << out << "\n";
    } catch (const FieldTooSmallError& e) {
        std::cerr << "error: " << e.what()
                  << "\nunsolved polynomial: " << e.polynomial.to_string()
                  << "\nsuggested field degree: " << e.suggested_degree
                  << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
