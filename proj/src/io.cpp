#include "hyperrig/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "hyperrig/corpus.hpp"
#include "hyperrig/errors.hpp"

namespace hyperrig::io {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Token {
    std::string text;
    int line;
    int col;
};

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    lines.push_back(current);
    return lines;
}

std::vector<Token> tokenize(const std::string& line, int line_no) {
    std::vector<Token> out;
    std::size_t limit = line.find('#');
    if (limit == std::string::npos) limit = line.size();
    std::size_t i = 0;
    while (i < limit) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < limit && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.push_back({line.substr(i, j - i), line_no, static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

[[noreturn]] void fail(const std::string& msg, int line, int col) {
    throw ParseError(msg, line, col);
}

long parse_integer(const Token& t, long lo, long hi) {
    long value = 0;
    const char* begin = t.text.data();
    const char* end = begin + t.text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        fail("expected an integer, got '" + t.text + "'", t.line, t.col);
    if (value < lo || value > hi) {
        std::ostringstream os;
        os << "integer " << value << " outside the allowed range [" << lo << ", " << hi << "]";
        fail(os.str(), t.line, t.col);
    }
    return value;
}

bool parse_real_str(const std::string& s, double* out) {
    if (s.empty()) return false;
    char* endp = nullptr;
    const double v = std::strtod(s.c_str(), &endp);
    if (endp != s.c_str() + s.size()) return false;
    *out = v;
    return true;
}

Cplx parse_complex(const Token& t) {
    const std::string& s = t.text;
    if (!s.empty() && s.back() == 'I') {
        const std::string body = s.substr(0, s.size() - 1);
        int split = -1;
        for (int k = static_cast<int>(body.size()) - 1; k > 0; --k) {
            const char ch = body[static_cast<std::size_t>(k)];
            if ((ch == '+' || ch == '-') && body[static_cast<std::size_t>(k - 1)] != 'e' &&
                body[static_cast<std::size_t>(k - 1)] != 'E') {
                split = k;
                break;
            }
        }
        const std::string re_part = split > 0 ? body.substr(0, static_cast<std::size_t>(split)) : "";
        const std::string im_part = split > 0 ? body.substr(static_cast<std::size_t>(split)) : body;

        double re = 0.0;
        if (!re_part.empty() && !parse_real_str(re_part, &re))
            fail("bad complex number '" + s + "'", t.line, t.col);
        double im = 0.0;
        if (im_part.empty() || im_part == "+") {
            im = 1.0;
        } else if (im_part == "-") {
            im = -1.0;
        } else if (!parse_real_str(im_part, &im)) {
            fail("bad complex number '" + s + "'", t.line, t.col);
        }
        return {re, im};
    }
    double re = 0.0;
    if (!parse_real_str(s, &re)) fail("bad number '" + s + "'", t.line, t.col);
    return {re, 0.0};
}

} // namespace

InputDocument parse_document(const std::string& text) {
    InputDocument doc;
    doc.text = text;
    CorrespondenceInput& corr = doc.correspondence;
    GraphInput& graph = doc.graph;

    const std::vector<std::string> lines = split_lines(text);
    std::optional<InputDocument::Kind> kind;
    bool saw_directive = false;
    bool have_algebra = false;
    bool have_module = false;
    std::vector<int> canonical_used;
    std::set<std::pair<int, int>> slots_seen;

    auto require_kind = [&](InputDocument::Kind k, const Token& head) {
        if (kind && *kind != k)
            fail("directive '" + head.text + "' does not belong to this document kind", head.line,
                 head.col);
        kind = k;
    };
    auto require_shapes = [&](const Token& head) {
        if (!have_algebra || !have_module)
            fail("directive '" + head.text + "' must come after algebra and module", head.line,
                 head.col);
    };

    std::size_t li = 0;
    while (li < lines.size()) {
        const int line_no = static_cast<int>(li) + 1;
        const std::vector<Token> toks = tokenize(lines[li], line_no);
        ++li;
        if (toks.empty()) continue;
        const Token& head = toks[0];
        const std::string& d = head.text;

        if (d == "format-version") {
            if (saw_directive) fail("format-version must be the first directive", head.line, head.col);
            if (toks.size() != 2) fail("format-version takes exactly one value", head.line, head.col);
            if (toks[1].text != "1")
                fail("unsupported format-version '" + toks[1].text + "'", toks[1].line, toks[1].col);
            saw_directive = true;
            continue;
        }
        saw_directive = true;

        if (d == "algebra") {
            require_kind(InputDocument::Kind::Correspondence, head);
            if (have_algebra) fail("duplicate algebra directive", head.line, head.col);
            if (toks.size() < 2) fail("algebra needs at least one block size", head.line, head.col);
            for (std::size_t k = 1; k < toks.size(); ++k)
                corr.algebra_blocks.push_back(static_cast<int>(parse_integer(toks[k], 1, 64)));
            have_algebra = true;
        } else if (d == "module") {
            require_kind(InputDocument::Kind::Correspondence, head);
            if (!have_algebra) fail("module must come after algebra", head.line, head.col);
            if (have_module) fail("duplicate module directive", head.line, head.col);
            if (toks.size() != corr.algebra_blocks.size() + 1)
                fail("module needs one multiplicity per algebra block", head.line, head.col);
            for (std::size_t k = 1; k < toks.size(); ++k)
                corr.module_multiplicities.push_back(static_cast<int>(parse_integer(toks[k], 0, 64)));
            have_module = true;
            canonical_used.assign(corr.algebra_blocks.size(), 0);
        } else if (d == "lambda") {
            require_kind(InputDocument::Kind::Correspondence, head);
            require_shapes(head);
            if (toks.size() != 4)
                fail("lambda takes a module block, an algebra block and a count", head.line, head.col);
            const int b = static_cast<int>(corr.algebra_blocks.size());
            const int i = static_cast<int>(parse_integer(toks[1], 1, b)) - 1;
            const int j = static_cast<int>(parse_integer(toks[2], 1, b)) - 1;
            const int c = static_cast<int>(parse_integer(toks[3], 0, 64));
            if (!slots_seen.insert({i, j}).second)
                fail("duplicate lambda slot", toks[1].line, toks[1].col);
            canonical_used[static_cast<std::size_t>(i)] +=
                c * corr.algebra_blocks[static_cast<std::size_t>(j)];
            if (canonical_used[static_cast<std::size_t>(i)] >
                corr.module_multiplicities[static_cast<std::size_t>(i)]) {
                std::ostringstream os;
                os << "left action does not fit module block " << i + 1 << ": copies need "
                   << canonical_used[static_cast<std::size_t>(i)] << " rows but the multiplicity is "
                   << corr.module_multiplicities[static_cast<std::size_t>(i)];
                fail(os.str(), head.line, head.col);
            }
            corr.lambda_counts[{i, j}] = c;
        } else if (d == "lambda-matrix") {
            require_kind(InputDocument::Kind::Correspondence, head);
            require_shapes(head);
            if (toks.size() != 3)
                fail("lambda-matrix takes a module block and an algebra block", head.line, head.col);
            const int b = static_cast<int>(corr.algebra_blocks.size());
            const int i = static_cast<int>(parse_integer(toks[1], 1, b)) - 1;
            const int j = static_cast<int>(parse_integer(toks[2], 1, b)) - 1;
            if (!slots_seen.insert({i, j}).second)
                fail("duplicate lambda slot", toks[1].line, toks[1].col);
            const int rows = corr.module_multiplicities[static_cast<std::size_t>(i)];
            if (rows == 0)
                fail("lambda-matrix targets a module block of multiplicity zero", head.line, head.col);

            CMatrix mat;
            int width = -1;
            int filled = 0;
            while (filled < rows) {
                if (li >= lines.size())
                    fail("lambda-matrix block ended before all rows were given",
                         static_cast<int>(lines.size()), 1);
                const int row_line = static_cast<int>(li) + 1;
                const std::vector<Token> row = tokenize(lines[li], row_line);
                ++li;
                if (row.empty()) continue;
                if (width < 0) {
                    width = static_cast<int>(row.size());
                    const int nj = corr.algebra_blocks[static_cast<std::size_t>(j)];
                    if (width % nj != 0)
                        fail("lambda-matrix width must be a multiple of the algebra block size",
                             row[0].line, row[0].col);
                    if (width > rows)
                        fail("lambda-matrix is wider than the module block multiplicity",
                             row[0].line, row[0].col);
                    mat = CMatrix(rows, width);
                }
                if (static_cast<int>(row.size()) != width)
                    fail("lambda-matrix rows must all have the same width", row[0].line, row[0].col);
                for (int c = 0; c < width; ++c)
                    mat(filled, c) = parse_complex(row[static_cast<std::size_t>(c)]);
                ++filled;
            }
            corr.lambda_overrides[{i, j}] = std::move(mat);
        } else if (d == "vertex") {
            require_kind(InputDocument::Kind::Graph, head);
            if (toks.size() != 2) fail("vertex takes exactly one label", head.line, head.col);
            const std::string& label = toks[1].text;
            for (const std::string& v : graph.vertices)
                if (v == label) fail("duplicate vertex '" + label + "'", toks[1].line, toks[1].col);
            graph.vertices.push_back(label);
        } else if (d == "edge") {
            require_kind(InputDocument::Kind::Graph, head);
            if (toks.size() != 4)
                fail("edge takes a source, a range and a count", head.line, head.col);
            auto known = [&](const std::string& v) {
                for (const std::string& w : graph.vertices)
                    if (w == v) return true;
                return false;
            };
            if (!known(toks[1].text))
                fail("unknown vertex '" + toks[1].text + "'", toks[1].line, toks[1].col);
            if (!known(toks[2].text))
                fail("unknown vertex '" + toks[2].text + "'", toks[2].line, toks[2].col);
            EdgeCount count;
            if (toks[3].text == "inf") {
                count = EdgeCount::inf();
            } else {
                count = EdgeCount::of(
                    static_cast<std::uint64_t>(parse_integer(toks[3], 0, 1000000)));
            }
            const std::pair<std::string, std::string> key{toks[1].text, toks[2].text};
            if (graph.edges.count(key)) fail("duplicate edge line", head.line, head.col);
            graph.edges[key] = count;
        } else {
            fail("unknown directive '" + d + "'", head.line, head.col);
        }
    }

    if (!kind) fail("document is empty", 1, 1);
    if (*kind == InputDocument::Kind::Correspondence && !have_module)
        fail("correspondence document needs algebra and module directives",
             std::max(1, static_cast<int>(lines.size())), 1);
    doc.kind = *kind;
    return doc;
}

Correspondence build_correspondence(const CorrespondenceInput& in) {
    MultiMatrixAlgebra algebra(in.algebra_blocks);
    HilbertModule module(algebra, in.module_multiplicities);
    const int b = algebra.block_count();

    std::map<std::pair<int, int>, CMatrix> intertwiners;
    for (int i = 0; i < b; ++i) {
        int offset = 0;
        for (int j = 0; j < b; ++j) {
            auto it = in.lambda_counts.find({i, j});
            if (it == in.lambda_counts.end() || it->second == 0) continue;
            const int width = it->second * algebra.block_size(j);
            if (offset + width > module.block_rows(i)) {
                std::ostringstream os;
                os << "left action does not fit module block " << i + 1;
                throw ValidationError(os.str());
            }
            CMatrix w = CMatrix::Zero(module.block_rows(i), width);
            w.block(offset, 0, width, width).setIdentity();
            intertwiners.emplace(std::make_pair(i, j), std::move(w));
            offset += width;
        }
    }
    for (const auto& [slot, mat] : in.lambda_overrides) intertwiners.emplace(slot, mat);
    return Correspondence::from_intertwiners(algebra, module, intertwiners);
}

Multigraph build_graph(const GraphInput& in) {
    return {in.vertices, in.edges};
}

namespace {

FrameBlock compute_frame_block(const HilbertModule& module, const Tolerance& tol) {
    FrameBlock out;
    const std::vector<ModuleBasisIndex> basis = module_basis(module);
    out.vectors = static_cast<int>(basis.size());
    if (basis.empty()) return out;

    std::vector<ModuleElement> gens;
    gens.reserve(basis.size());
    for (const ModuleBasisIndex& idx : basis)
        gens.push_back(ModuleElement::basis_element(module, idx.block, idx.row, idx.col));
    const Frame f = normalized_frame(gens, tol);

    ModuleOperator sum = ModuleOperator::zero(module);
    for (const ModuleElement& v : f.vectors) sum += rank_one(v, v);
    out.operator_residual = (sum - ModuleOperator::identity(module)).norm();

    Rng rng(0x0f1a7e5u);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const ModuleElement x = random_element(module, rng);
        ModuleElement rec = ModuleElement::zero(module);
        for (const ModuleElement& v : f.vectors) rec += v * inner_product(v, x);
        worst = std::max(worst, module_norm(x - rec));
    }
    out.reconstruction_residual = worst;
    return out;
}

CertificateBlock to_certificate_block(const CertificateReport& cert, bool truncated) {
    CertificateBlock out;
    out.verdict = cert.verdict;
    out.truncated = truncated;
    out.defect = cert.defect;
    out.agreement_on_s = cert.agreement_on_s;
    out.analytic_defect = cert.analytic_defect;
    out.max_analytic_gap = cert.max_analytic_gap;
    out.covariance_residual = cert.covariance_residual;
    out.depth = cert.depth;
    out.shift = cert.shift_dim;
    out.tol = cert.tol;
    out.table.resize(static_cast<std::size_t>(cert.table.rows()));
    for (Eigen::Index r = 0; r < cert.table.rows(); ++r) {
        out.table[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(cert.table.cols()));
        for (Eigen::Index c = 0; c < cert.table.cols(); ++c)
            out.table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = cert.table(r, c);
    }
    return out;
}

std::string witness_string(const ModuleBasisIndex& idx) {
    std::ostringstream os;
    os << "module block " << idx.block + 1 << ", entry (" << idx.row + 1 << "," << idx.col + 1
       << ")";
    return os.str();
}

} // namespace

Report run_analyze(const InputDocument& doc, const AnalyzeOptions& opts) {
    const Tolerance tol{opts.tol};
    Report report;
    report.kind = doc.kind == InputDocument::Kind::Correspondence ? "correspondence" : "graph";
    report.input = doc.text;
    report.options = opts;

    if (doc.kind == InputDocument::Kind::Correspondence) {
        Correspondence c = build_correspondence(doc.correspondence);
        c.validate(tol);

        HyperrigidityVerdict v = is_hyperrigid(c, tol);
        report.verdict.hyperrigid = v.hyperrigid;
        for (int j : v.katsura.members()) report.verdict.katsura_blocks.push_back(j + 1);
        for (int j : v.kernel.members()) report.verdict.kernel_blocks.push_back(j + 1);
        if (v.witness_index) report.verdict.witness = witness_string(*v.witness_index);
        report.warnings.insert(report.warnings.end(), v.warnings.begin(), v.warnings.end());

        if (opts.certify) {
            const CertificateReport cert = certify(c, opts.depth, opts.shift, tol);
            report.certificate = to_certificate_block(cert, false);
            report.warnings.insert(report.warnings.end(), cert.warnings.begin(),
                                   cert.warnings.end());
            if (cert.verdict != v.hyperrigid)
                throw InternalError("structural verdict and numeric certificate disagree");
        }
        if (opts.frame) report.frame = compute_frame_block(c.module(), tol);
        return report;
    }

    const Multigraph g = build_graph(doc.graph);
    const GraphVerdict gv = is_hyperrigid(g);
    report.verdict.hyperrigid = gv.hyperrigid;
    report.verdict.infinite_receivers = gv.infinite_receivers;
    report.verdict.finite_receivers = finite_receivers(g);
    report.verdict.regular_vertices = regular_vertices(g);

    if (opts.certify || opts.frame) {
        const bool finite = g.all_finite();
        bool truncated = false;
        std::optional<Multigraph> numeric = finite ? std::optional<Multigraph>(g) : std::nullopt;
        if (!finite) {
            if (opts.truncate < 1)
                throw ValidationError(
                    "graph has infinite multiplicities; pass --truncate <cap> to build a finite "
                    "model for the certificate");
            numeric = truncate(g, static_cast<std::uint64_t>(opts.truncate));
            truncated = true;
        }
        Correspondence c = to_correspondence(*numeric);
        c.validate(tol);

        if (opts.certify) {
            const CertificateReport cert = certify(c, opts.depth, opts.shift, tol);
            report.certificate = to_certificate_block(cert, truncated);
            report.warnings.insert(report.warnings.end(), cert.warnings.begin(),
                                   cert.warnings.end());
            const HyperrigidityVerdict cv = is_hyperrigid(c, tol);
            if (cert.verdict != cv.hyperrigid)
                throw InternalError("structural verdict and numeric certificate disagree on the "
                                    "finite model");
            if (truncated) {
                std::ostringstream os;
                os << "certificate computed on a truncation (cap " << opts.truncate
                   << "); the symbolic verdict governs";
                report.warnings.push_back(os.str());
            } else if (cert.verdict != gv.hyperrigid) {
                throw InternalError("graph criterion and numeric certificate disagree");
            }
        }
        if (opts.frame) report.frame = compute_frame_block(c.module(), tol);
    }
    return report;
}

namespace {

ordered_json options_to_json(const AnalyzeOptions& o) {
    ordered_json j;
    j["tol"] = o.tol;
    j["depth"] = o.depth;
    j["shift"] = o.shift;
    j["certify"] = o.certify;
    j["frame"] = o.frame;
    j["truncate"] = o.truncate;
    return j;
}

ordered_json verdict_to_json(const VerdictBlock& v) {
    ordered_json j;
    j["hyperrigid"] = v.hyperrigid;
    j["katsura-blocks"] = v.katsura_blocks;
    j["kernel-blocks"] = v.kernel_blocks;
    j["witness"] = v.witness ? ordered_json(*v.witness) : ordered_json(nullptr);
    j["infinite-receivers"] = v.infinite_receivers;
    j["finite-receivers"] = v.finite_receivers;
    j["regular-vertices"] = v.regular_vertices;
    return j;
}

ordered_json certificate_to_json(const CertificateBlock& c) {
    ordered_json j;
    j["verdict"] = c.verdict;
    j["truncated"] = c.truncated;
    j["defect"] = c.defect;
    j["agreement-on-s"] = c.agreement_on_s;
    j["analytic-defect"] = c.analytic_defect;
    j["max-analytic-gap"] = c.max_analytic_gap;
    j["covariance-residual"] = c.covariance_residual;
    j["depth"] = c.depth;
    j["shift"] = c.shift;
    j["tol"] = c.tol;
    j["table"] = c.table;
    return j;
}

ordered_json frame_to_json(const FrameBlock& f) {
    ordered_json j;
    j["vectors"] = f.vectors;
    j["operator-residual"] = f.operator_residual;
    j["reconstruction-residual"] = f.reconstruction_residual;
    return j;
}

} // namespace

std::string serialize_report(const Report& r) {
    ordered_json j;
    j["format-version"] = r.format_version;
    j["kind"] = r.kind;
    j["input"] = r.input;
    j["options"] = options_to_json(r.options);
    j["verdict"] = verdict_to_json(r.verdict);
    j["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : ordered_json(nullptr);
    j["frame"] = r.frame ? frame_to_json(*r.frame) : ordered_json(nullptr);
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

Report parse_report(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report is not valid JSON: ") + e.what(), 1, 1);
    }
    try {
        Report r;
        r.format_version = j.at("format-version").get<int>();
        r.kind = j.at("kind").get<std::string>();
        r.input = j.at("input").get<std::string>();

        const ordered_json& o = j.at("options");
        r.options.tol = o.at("tol").get<double>();
        r.options.depth = o.at("depth").get<int>();
        r.options.shift = o.at("shift").get<int>();
        r.options.certify = o.at("certify").get<bool>();
        r.options.frame = o.at("frame").get<bool>();
        r.options.truncate = o.at("truncate").get<int>();

        const ordered_json& v = j.at("verdict");
        r.verdict.hyperrigid = v.at("hyperrigid").get<bool>();
        r.verdict.katsura_blocks = v.at("katsura-blocks").get<std::vector<int>>();
        r.verdict.kernel_blocks = v.at("kernel-blocks").get<std::vector<int>>();
        if (!v.at("witness").is_null()) r.verdict.witness = v.at("witness").get<std::string>();
        r.verdict.infinite_receivers = v.at("infinite-receivers").get<std::vector<std::string>>();
        r.verdict.finite_receivers = v.at("finite-receivers").get<std::vector<std::string>>();
        r.verdict.regular_vertices = v.at("regular-vertices").get<std::vector<std::string>>();

        if (!j.at("certificate").is_null()) {
            const ordered_json& c = j.at("certificate");
            CertificateBlock block;
            block.verdict = c.at("verdict").get<bool>();
            block.truncated = c.at("truncated").get<bool>();
            block.defect = c.at("defect").get<double>();
            block.agreement_on_s = c.at("agreement-on-s").get<double>();
            block.analytic_defect = c.at("analytic-defect").get<double>();
            block.max_analytic_gap = c.at("max-analytic-gap").get<double>();
            block.covariance_residual = c.at("covariance-residual").get<double>();
            block.depth = c.at("depth").get<int>();
            block.shift = c.at("shift").get<int>();
            block.tol = c.at("tol").get<double>();
            block.table = c.at("table").get<std::vector<std::vector<double>>>();
            r.certificate = std::move(block);
        }
        if (!j.at("frame").is_null()) {
            const ordered_json& f = j.at("frame");
            FrameBlock block;
            block.vectors = f.at("vectors").get<int>();
            block.operator_residual = f.at("operator-residual").get<double>();
            block.reconstruction_residual = f.at("reconstruction-residual").get<double>();
            r.frame = block;
        }
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report is missing fields: ") + e.what(), 1, 1);
    }
}

int run_selftest(std::ostream& out, int corpus_cases) {
    int failures = 0;
    const Tolerance tol{};
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        out << (ok ? "ok   " : "FAIL ") << name;
        if (!ok && !detail.empty()) out << " -- " << detail;
        out << "\n";
        if (!ok) ++failures;
    };

    {
        Eigen::MatrixXi copies(1, 1);
        copies << 1;
        const Correspondence c =
            Correspondence::from_multiplicities(MultiMatrixAlgebra({1}), {2}, copies);
        c.validate(tol);
        const HyperrigidityVerdict v = is_hyperrigid(c, tol);
        const CertificateReport cert = certify(c, 2, 4, tol);
        const bool ok = !v.hyperrigid && !cert.verdict &&
                        std::abs(cert.table(1, 1) - 1.0) <= 1e-10;
        check("degenerate witness: one-dimensional algebra on a plane, defect 1", ok);
    }

    {
        const MultiMatrixAlgebra a({2, 1});
        const Correspondence c = Correspondence::from_multiplicities(
            a, {2, 1}, Eigen::MatrixXi::Identity(2, 2));
        c.validate(tol);
        const HyperrigidityVerdict v = is_hyperrigid(c, tol);
        const CertificateReport cert = certify(c, 2, 4, tol);
        const bool ok = v.hyperrigid && cert.verdict && cert.defect <= 1e-12;
        check("identity correspondence: hyperrigid with zero defect", ok);
    }

    {
        const std::vector<CorpusCase> corpus = correspondence_corpus(corpus_cases, 0x19051604u);
        int agreed = 0;
        bool margins = true;
        for (const CorpusCase& cs : corpus) {
            cs.corr.validate(tol);
            const HyperrigidityVerdict v = is_hyperrigid(cs.corr, tol);
            const CertificateReport cert = certify(cs.corr, 2, 4, tol);
            if (v.hyperrigid == cert.verdict) ++agreed;
            margins = margins && (v.hyperrigid ? cert.defect <= 1e-10 : cert.defect >= 0.1);
        }
        std::ostringstream os;
        os << "corpus of " << corpus.size()
           << " correspondences: structural verdict matches the certificate";
        check(os.str(), agreed == static_cast<int>(corpus.size()) && margins);
    }

    {
        const std::vector<Multigraph> graphs = finite_graph_corpus(20, 0xa11ce5u);
        bool ok = true;
        for (const Multigraph& g : graphs) {
            const GraphVerdict gv = is_hyperrigid(g);
            const HyperrigidityVerdict cv = is_hyperrigid(to_correspondence(g), tol);
            ok = ok && gv.hyperrigid && cv.hyperrigid;
        }
        check("finite graphs: hyperrigid along both code paths", ok);
    }

    {
        bool ok = true;
        for (const Multigraph& g : infinite_graph_examples()) {
            const GraphVerdict gv = is_hyperrigid(g);
            ok = ok && !gv.hyperrigid && !gv.infinite_receivers.empty();
            for (std::uint64_t cap : {1, 2, 5}) {
                const Multigraph t = truncate(g, cap);
                ok = ok && is_hyperrigid(t).hyperrigid &&
                     is_hyperrigid(to_correspondence(t), tol).hyperrigid;
            }
        }
        check("infinite receivers: symbolically degenerate, every truncation hyperrigid", ok);
    }

    out << (failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
    return failures == 0 ? 0 : 2;
}

} // namespace hyperrig::io
