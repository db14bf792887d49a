#include "hypcone/sdpa_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace hypcone::sdpa {

using lmi::AffineMatrixMap;
using lmi::LinExpr;
using sdpsolve::SdpProblem;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Token {
    std::string text;
    int line;
};

// Commas, braces and parentheses are treated as whitespace, comment lines
// (leading '*' or '"') are skipped.
std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    int line = 1;
    size_t i = 0;
    bool line_start = true;
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == '\n') {
            ++line;
            ++i;
            line_start = true;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '{' ||
            ch == '}' || ch == '(' || ch == ')') {
            ++i;
            continue;
        }
        if (line_start && (ch == '*' || ch == '"')) {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        line_start = false;
        size_t j = i;
        while (j < text.size()) {
            const char cj = text[j];
            if (std::isspace(static_cast<unsigned char>(cj)) || cj == ',' || cj == '{' ||
                cj == '}' || cj == '(' || cj == ')')
                break;
            ++j;
        }
        tokens.push_back({text.substr(i, j - i), line});
        i = j;
    }
    return tokens;
}

class Reader {
public:
    explicit Reader(const std::string& text) : tokens_(tokenize(text)) {}

    bool done() const { return pos_ >= tokens_.size(); }
    int last_line() const { return tokens_.empty() ? 1 : tokens_.back().line; }

    long next_int(const char* what) {
        const Token& t = next(what);
        try {
            size_t used = 0;
            const long v = std::stol(t.text, &used);
            if (used != t.text.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw parse_error(std::string("expected integer for ") + what + ", got '" + t.text + "'",
                              t.line);
        }
    }

    double next_double(const char* what) {
        const Token& t = next(what);
        try {
            size_t used = 0;
            const double v = std::stod(t.text, &used);
            if (used != t.text.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw parse_error(std::string("expected number for ") + what + ", got '" + t.text + "'",
                              t.line);
        }
    }

    int line() const { return pos_ < tokens_.size() ? tokens_[pos_].line : last_line(); }

private:
    const Token& next(const char* what) {
        if (done())
            throw parse_error(std::string("unexpected end of file, expected ") + what, last_line());
        return tokens_[pos_++];
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

} // namespace

std::string write_sdpa(const SdpProblem& problem) {
    if (problem.sense != sdpsolve::Sense::Min)
        throw argument_error("write_sdpa: only Min-sense problems are exported");

    const int m = problem.var_count;
    // Diagonal tail block: nonneg scalars then (>=, <=) pairs per equality.
    std::vector<LinExpr> diag = problem.nonneg;
    for (const auto& e : problem.equalities) {
        diag.push_back(e);
        LinExpr neg = e;
        neg *= -1.0;
        diag.push_back(std::move(neg));
    }

    const int nblocks = static_cast<int>(problem.psd_blocks.size()) + (diag.empty() ? 0 : 1);
    std::ostringstream os;
    os << m << "\n" << nblocks << "\n";
    for (size_t b = 0; b < problem.psd_blocks.size(); ++b) {
        if (b) os << " ";
        os << problem.psd_blocks[b].dim();
    }
    if (!diag.empty()) {
        if (!problem.psd_blocks.empty()) os << " ";
        os << -static_cast<int>(diag.size());
    }
    os << "\n";
    Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
    for (const auto& [v, coef] : problem.objective.terms()) c(v) = coef;
    for (int i = 0; i < m; ++i) os << (i ? " " : "") << fmt(c(i));
    os << "\n";

    // F_0 = -const, F_i = coeff of y_i; indices are 1-based.
    for (size_t b = 0; b < problem.psd_blocks.size(); ++b) {
        const auto& blk = problem.psd_blocks[b];
        for (const auto& e : blk.const_entries())
            os << "0 " << b + 1 << " " << e.i + 1 << " " << e.j + 1 << " " << fmt(-e.value) << "\n";
        for (const auto& [var, entries] : blk.coeffs())
            for (const auto& e : entries)
                os << var + 1 << " " << b + 1 << " " << e.i + 1 << " " << e.j + 1 << " "
                   << fmt(e.value) << "\n";
    }
    if (!diag.empty()) {
        const int blkno = static_cast<int>(problem.psd_blocks.size()) + 1;
        for (size_t s = 0; s < diag.size(); ++s) {
            if (diag[s].constant() != 0.0)
                os << "0 " << blkno << " " << s + 1 << " " << s + 1 << " "
                   << fmt(-diag[s].constant()) << "\n";
            for (const auto& [var, coef] : diag[s].terms())
                os << var + 1 << " " << blkno << " " << s + 1 << " " << s + 1 << " " << fmt(coef)
                   << "\n";
        }
    }
    return os.str();
}

SdpProblem read_sdpa(const std::string& text) {
    Reader r(text);
    SdpProblem p;
    p.sense = sdpsolve::Sense::Min;

    const long m = r.next_int("variable count");
    if (m < 0) throw parse_error("negative variable count", r.line());
    p.var_count = static_cast<int>(m);
    const long nblocks = r.next_int("block count");
    if (nblocks < 0) throw parse_error("negative block count", r.line());

    // Block table: positive dim -> index into psd_blocks; negative -> base
    // index into the nonneg list.
    struct BlockRef {
        bool diagonal;
        int index;
        int dim;
    };
    std::vector<BlockRef> refs;
    for (long b = 0; b < nblocks; ++b) {
        const long d = r.next_int("block size");
        if (d == 0) throw parse_error("zero block size", r.line());
        if (d > 0) {
            refs.push_back({false, static_cast<int>(p.psd_blocks.size()), static_cast<int>(d)});
            p.psd_blocks.emplace_back(static_cast<int>(d));
        } else {
            refs.push_back({true, static_cast<int>(p.nonneg.size()), static_cast<int>(-d)});
            p.nonneg.insert(p.nonneg.end(), static_cast<size_t>(-d), LinExpr());
        }
    }
    for (long i = 0; i < m; ++i) {
        const double ci = r.next_double("objective entry");
        if (ci != 0.0) p.objective.add_term(static_cast<int>(i), ci);
    }
    while (!r.done()) {
        const int entry_line = r.line();
        const long matno = r.next_int("matrix number");
        const long blkno = r.next_int("block number");
        const long i = r.next_int("row index");
        const long j = r.next_int("column index");
        const double v = r.next_double("entry value");
        if (matno < 0 || matno > m) throw parse_error("matrix number out of range", entry_line);
        if (blkno < 1 || blkno > static_cast<long>(refs.size()))
            throw parse_error("block number out of range", entry_line);
        const BlockRef& ref = refs[blkno - 1];
        if (i < 1 || j < 1 || i > ref.dim || j > ref.dim || i > j)
            throw parse_error("entry indices out of range (need 1 <= i <= j <= dim)", entry_line);
        if (ref.diagonal) {
            if (i != j) throw parse_error("off-diagonal entry in a diagonal block", entry_line);
            LinExpr& e = p.nonneg[ref.index + i - 1];
            if (matno == 0) {
                e.add_constant(-v);
            } else {
                e.add_term(static_cast<int>(matno - 1), v);
            }
        } else {
            AffineMatrixMap& blk = p.psd_blocks[ref.index];
            if (matno == 0) {
                blk.add_const(static_cast<int>(i - 1), static_cast<int>(j - 1), -v);
            } else {
                blk.add_coeff(static_cast<int>(matno - 1), static_cast<int>(i - 1),
                              static_cast<int>(j - 1), v);
            }
        }
    }
    return p;
}

SdpProblem read_sdpa_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open SDPA file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_sdpa(ss.str());
}

void write_sdpa_file(const SdpProblem& problem, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw argument_error("cannot open file for writing: " + path);
    out << write_sdpa(problem);
}

sdpsolve::SolveReport solve_file(const std::string& path, const sdpsolve::SolverConfig& config) {
    return sdpsolve::solve(read_sdpa_file(path), config);
}

} // namespace hypcone::sdpa
