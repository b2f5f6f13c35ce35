#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperrig/graph.hpp"
#include "hyperrig/repcert.hpp"

namespace hyperrig::io {

// Input documents are line oriented with '#' comments. A correspondence
// document gives the algebra block sizes, the module multiplicities, and the
// left action either as multiplicity counts
//
//     algebra <n1> <n2> ...
//     module <m1> <m2> ...
//     lambda <i> <j> <count>
//
// or, per slot, as an explicit intertwiner
//
//     lambda-matrix <i> <j>
//     <m_i rows of complex entries, width a multiple of n_j>
//
// A graph document lists vertices and edges:
//
//     vertex <label>
//     edge <source> <range> <count|inf>
//
// Numbers are decimal; complex entries use the forms a, a+bI, a-bI, bI.
// An optional first directive `format-version 1` pins the format.

struct CorrespondenceInput {
    std::vector<int> algebra_blocks;
    std::vector<int> module_multiplicities;
    std::map<std::pair<int, int>, int> lambda_counts;        ///< 0-based slots
    std::map<std::pair<int, int>, CMatrix> lambda_overrides; ///< explicit intertwiners
};

struct GraphInput {
    std::vector<std::string> vertices;
    std::map<std::pair<std::string, std::string>, EdgeCount> edges;
};

struct InputDocument {
    enum class Kind { Correspondence, Graph };
    Kind kind;
    std::string text; ///< original text, echoed into reports
    CorrespondenceInput correspondence;
    GraphInput graph;
};

/// Parses a whole document or throws ParseError with the line and column of
/// the first offense.
InputDocument parse_document(const std::string& text);

Correspondence build_correspondence(const CorrespondenceInput& in);
Multigraph build_graph(const GraphInput& in);

struct AnalyzeOptions {
    double tol = 1e-10;
    int depth = 2;
    int shift = 4;
    bool certify = false;
    bool frame = false;
    int truncate = 0; ///< 0 means no truncation requested

    bool operator==(const AnalyzeOptions&) const = default;
};

struct CertificateBlock {
    bool verdict = false;
    bool truncated = false;
    double defect = 0.0;
    double agreement_on_s = 0.0;
    double analytic_defect = 0.0;
    double max_analytic_gap = 0.0;
    double covariance_residual = 0.0;
    int depth = 0;
    int shift = 0;
    double tol = 0.0;
    std::vector<std::vector<double>> table;

    bool operator==(const CertificateBlock&) const = default;
};

struct FrameBlock {
    int vectors = 0;
    double operator_residual = 0.0;
    double reconstruction_residual = 0.0;

    bool operator==(const FrameBlock&) const = default;
};

struct VerdictBlock {
    bool hyperrigid = false;
    std::vector<int> katsura_blocks; ///< 1-based, correspondence documents
    std::vector<int> kernel_blocks;
    std::optional<std::string> witness;
    std::vector<std::string> infinite_receivers; ///< graph documents
    std::vector<std::string> finite_receivers;
    std::vector<std::string> regular_vertices;

    bool operator==(const VerdictBlock&) const = default;
};

struct Report {
    int format_version = 1;
    std::string kind;
    std::string input;
    AnalyzeOptions options;
    VerdictBlock verdict;
    std::optional<CertificateBlock> certificate;
    std::optional<FrameBlock> frame;
    std::vector<std::string> warnings;

    bool operator==(const Report&) const = default;
};

/// Runs the structural decision and, on request, the numeric certificate and
/// frame residuals. When the certificate is computed on a truncation of a
/// symbolically infinite graph it is marked truncated and the symbolic
/// verdict governs; otherwise a verdict/certificate mismatch aborts with
/// InternalError.
Report run_analyze(const InputDocument& doc, const AnalyzeOptions& opts);

/// Deterministic JSON serialization; identical reports produce identical
/// bytes. parse_report inverts it exactly.
std::string serialize_report(const Report& r);
Report parse_report(const std::string& text);

/// Built-in corpus checks; one line per check. Returns the process exit code
/// (0 on success, 2 on any failure).
int run_selftest(std::ostream& out, int corpus_cases = 200);

} // namespace hyperrig::io
