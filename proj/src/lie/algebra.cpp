#include "growthlab/lie/algebra.hpp"

#include <fstream>
#include <sstream>

#include "growthlab/lie/invariant_complex.hpp"

namespace growthlab::lie {

ComplexLieAlgebra::ComplexLieAlgebra(int n, std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)), c_(static_cast<std::size_t>(n) * n * n)
{
    if (n < 1 || n > kMaxAlgebraDim)
        throw std::invalid_argument("algebra dimension must be in 1.." + std::to_string(kMaxAlgebraDim));
    if (labels_.empty())
        for (int k = 0; k < n; ++k)
            labels_.push_back("xi" + std::to_string(k + 1));
    if (static_cast<int>(labels_.size()) != n)
        throw std::invalid_argument("expected one label per basis covector");
}

void ComplexLieAlgebra::add_constant(int k, int i, int j, const GQ& value)
{
    if (k < 0 || k >= n_ || i < 0 || i >= n_ || j < 0 || j >= n_)
        throw std::out_of_range("structure constant index out of range");
    if (i == j)
        throw std::invalid_argument("structure constant needs i != j");
    if (i < j)
        c_[(k * n_ + i) * n_ + j] += value;
    else
        c_[(k * n_ + j) * n_ + i] -= value;
}

const GQ& ComplexLieAlgebra::constant(int k, int i, int j) const { return c_[(k * n_ + i) * n_ + j]; }

ComplexLieAlgebra ComplexLieAlgebra::permuted(const std::vector<int>& perm) const
{
    if (static_cast<int>(perm.size()) != n_)
        throw std::invalid_argument("permutation size mismatch");
    // new basis η^a = ξ^{perm[a]}
    std::vector<int> where(n_, -1);
    for (int a = 0; a < n_; ++a) {
        if (perm[a] < 0 || perm[a] >= n_ || where[perm[a]] != -1)
            throw std::invalid_argument("not a permutation");
        where[perm[a]] = a;
    }
    std::vector<std::string> labels;
    for (int a = 0; a < n_; ++a)
        labels.push_back(labels_[perm[a]]);
    ComplexLieAlgebra out(n_, labels);
    for (int k = 0; k < n_; ++k)
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (!constant(k, i, j).is_zero())
                    out.add_constant(where[k], where[i], where[j], constant(k, i, j));
    return out;
}

nlohmann::json ComplexLieAlgebra::to_json() const
{
    nlohmann::json c = nlohmann::json::array();
    for (int k = 0; k < n_; ++k)
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                const GQ& v = constant(k, i, j);
                if (!v.is_zero())
                    c.push_back({k + 1, i + 1, j + 1, v.re().get_str(), v.im().get_str()});
            }
    return {{"dim", n_}, {"constants", c}, {"labels", labels_}};
}

ComplexLieAlgebra direct_sum(const ComplexLieAlgebra& a, const ComplexLieAlgebra& b)
{
    std::vector<std::string> labels = a.labels();
    for (const auto& l : b.labels())
        labels.push_back(l + "'");
    ComplexLieAlgebra out(a.dim() + b.dim(), labels);
    for (int k = 0; k < a.dim(); ++k)
        for (int i = 0; i < a.dim(); ++i)
            for (int j = i + 1; j < a.dim(); ++j)
                if (!a.constant(k, i, j).is_zero())
                    out.add_constant(k, i, j, a.constant(k, i, j));
    const int s = a.dim();
    for (int k = 0; k < b.dim(); ++k)
        for (int i = 0; i < b.dim(); ++i)
            for (int j = i + 1; j < b.dim(); ++j)
                if (!b.constant(k, i, j).is_zero())
                    out.add_constant(s + k, s + i, s + j, b.constant(k, i, j));
    return out;
}

ComplexLieAlgebra builtin_algebra(const std::string& name, int n)
{
    if (name == "abelian" || name == "torus")
        return ComplexLieAlgebra(n);
    if (name == "heisenberg" || name == "iwasawa") {
        ComplexLieAlgebra g(3, {"alpha", "beta", "gamma"});
        g.add_constant(2, 0, 1, -1);
        return g;
    }
    if (name == "sl2c") {
        ComplexLieAlgebra g(3, {"alpha", "beta", "gamma"});
        g.add_constant(0, 1, 2, 1);
        g.add_constant(1, 2, 0, 1);
        g.add_constant(2, 0, 1, 1);
        return g;
    }
    if (name == "nakamura") {
        ComplexLieAlgebra g(3, {"xi1", "xi2", "xi3"});
        g.add_constant(1, 0, 1, -1);
        g.add_constant(2, 0, 2, 1);
        return g;
    }
    throw std::invalid_argument("unknown algebra '" + name + "'");
}

std::vector<std::string> builtin_algebra_names() { return {"abelian", "heisenberg", "sl2c", "nakamura"}; }

JacobiReport check_jacobi(const ComplexLieAlgebra& algebra)
{
    const int n = algebra.dim();
    JacobiReport out;
    for (int k = 0; k < n; ++k) {
        const InvariantForm dd = exterior_d(algebra, exterior_d(algebra, InvariantForm::generator(n, k)));
        if (dd.is_zero())
            continue;
        const Mask m = dd.terms().begin()->first;
        std::vector<int> idx;
        for (int b = 0; b < n; ++b)
            if (m & (Mask{1} << b))
                idx.push_back(b);
        out.holds = false;
        out.k = k;
        out.a = idx.at(0);
        out.b = idx.at(1);
        out.c = idx.at(2);
        const auto& l = algebra.labels();
        std::ostringstream os;
        os << "Jacobi identity fails for the triple (" << out.a + 1 << ", " << out.b + 1 << ", " << out.c + 1
           << "): d(d " << l[k] << ") has coefficient " << dd.terms().begin()->second.to_string() << " on " << l[out.a]
           << "^" << l[out.b] << "^" << l[out.c];
        out.message = os.str();
        return out;
    }
    return out;
}

StructureError::StructureError(const std::string& source, int line, const std::string& field, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         (field.empty() ? std::string() : ": field '" + field + "'") + ": " + what),
      line_(line), field_(field)
{
}

namespace {

int line_of_offset(const std::string& text, std::size_t offset)
{
    int line = 1;
    for (std::size_t k = 0; k < offset && k < text.size(); ++k)
        if (text[k] == '\n')
            ++line;
    return line;
}

// Line on which the entry-th element of the top-level "constants" array
// starts, found by bracket scanning; 0 if it cannot be located.
int constants_entry_line(const std::string& text, std::size_t entry)
{
    std::size_t pos = text.find("\"constants\"");
    if (pos == std::string::npos)
        return 0;
    pos = text.find('[', pos);
    if (pos == std::string::npos)
        return 0;
    int depth = 0;
    std::size_t count = 0;
    bool in_string = false;
    for (std::size_t k = pos + 1; k < text.size(); ++k) {
        const char ch = text[k];
        if (in_string) {
            if (ch == '\\')
                ++k;
            else if (ch == '"')
                in_string = false;
            continue;
        }
        if (ch == '"') {
            in_string = true;
        } else if (ch == '[' || ch == '{') {
            if (depth == 0 && count++ == entry)
                return line_of_offset(text, k);
            ++depth;
        } else if (ch == ']' || ch == '}') {
            if (depth == 0)
                return 0;
            --depth;
        }
    }
    return 0;
}

int field_line(const std::string& text, const std::string& key)
{
    const std::size_t pos = text.find("\"" + key + "\"");
    return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

GQ parse_number(const nlohmann::json& v)
{
    if (v.is_number_integer())
        return GQ(mpq_class(v.get<long>()));
    if (v.is_string())
        return GQ::parse(v.get<std::string>());
    throw std::invalid_argument("expected an integer or a fraction string");
}

} // namespace

ComplexLieAlgebra parse_structure_json(const std::string& text, const std::string& source)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw StructureError(source, line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), "", "JSON syntax error");
    }
    if (!doc.is_object())
        throw StructureError(source, 1, "", "top level must be an object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw StructureError(source, field_line(text, "dim"), "dim", "missing or not an integer");
    const int n = doc["dim"].get<int>();
    if (n < 1 || n > kMaxAlgebraDim)
        throw StructureError(source, field_line(text, "dim"), "dim",
                             "must be between 1 and " + std::to_string(kMaxAlgebraDim));
    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        const auto& l = doc["labels"];
        if (!l.is_array() || static_cast<int>(l.size()) != n)
            throw StructureError(source, field_line(text, "labels"), "labels", "expected an array of dim strings");
        for (std::size_t k = 0; k < l.size(); ++k) {
            if (!l[k].is_string())
                throw StructureError(source, field_line(text, "labels"), "labels[" + std::to_string(k) + "]",
                                     "expected a string");
            labels.push_back(l[k].get<std::string>());
        }
    }
    ComplexLieAlgebra g(n, labels);
    if (!doc.contains("constants") || !doc["constants"].is_array())
        throw StructureError(source, field_line(text, "constants"), "constants", "missing or not an array");
    const auto& cs = doc["constants"];
    for (std::size_t e = 0; e < cs.size(); ++e) {
        const std::string field = "constants[" + std::to_string(e) + "]";
        const int line = constants_entry_line(text, e);
        const auto& row = cs[e];
        if (!row.is_array() || row.size() < 4 || row.size() > 5)
            throw StructureError(source, line, field, "expected [k, i, j, re, im]");
        int idx[3];
        const char* names[3] = {"k", "i", "j"};
        for (int r = 0; r < 3; ++r) {
            if (!row[r].is_number_integer())
                throw StructureError(source, line, field + "." + names[r], "index must be an integer");
            idx[r] = row[r].get<int>();
            if (idx[r] < 1 || idx[r] > n)
                throw StructureError(source, line, field + "." + names[r],
                                     "index " + std::to_string(idx[r]) + " outside 1.." + std::to_string(n));
        }
        if (idx[1] == idx[2])
            throw StructureError(source, line, field, "i and j must differ");
        GQ value;
        try {
            value = parse_number(row[3]);
            if (row.size() == 5)
                value += parse_number(row[4]) * GQ::i();
        } catch (const std::exception& ex) {
            throw StructureError(source, line, field + (row.size() == 5 ? ".re/im" : ".re"), ex.what());
        }
        g.add_constant(idx[0] - 1, idx[1] - 1, idx[2] - 1, value);
    }
    return g;
}

ComplexLieAlgebra load_structure_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw StructureError(path, 0, "", "cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_structure_json(os.str(), path);
}

} // namespace growthlab::lie
