#include "rlsd/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace rlsd::io {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open for reading: " + path.string());
    return in;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

double parse_double(const std::string& s, const fs::path& path) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidInputError("bad numeric field '" + s + "' in " + path.string());
    }
}

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Vector vector_from_json(const json& arr) {
    Vector v(static_cast<Index>(arr.size()));
    Index i = 0;
    for (const auto& x : arr) v[i++] = x.get<double>();
    return v;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

void write_matrix_csv(const fs::path& path, const Matrix& m) {
    std::ofstream out = open_out(path);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << fmt(m(i, j));
        }
        out << '\n';
    }
}

Matrix read_matrix_csv(const fs::path& path) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const std::string& field : split(line, ',')) row.push_back(parse_double(field, path));
        if (!rows.empty() && row.size() != rows.front().size())
            throw InvalidInputError("ragged CSV: " + path.string());
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidInputError("empty CSV: " + path.string());
    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return m;
}

namespace {

json box_to_json(const std::optional<Box>& box) {
    if (!box) return nullptr;
    return json{{"lo", vector_to_json(box->lo)}, {"hi", vector_to_json(box->hi)}};
}

std::optional<Box> box_from_json(const json& j, Index dim) {
    if (j.is_null()) return std::nullopt;
    auto side = [&](const json& v) -> Vector {
        if (v.is_number()) return Vector::Constant(dim, v.get<double>());
        return vector_from_json(v);
    };
    return Box{side(j.at("lo")), side(j.at("hi"))};
}

json regularizer_to_json(const Regularizer& reg) {
    json j{{"kind", to_string(reg.kind())}, {"beta", reg.beta()}, {"box", box_to_json(reg.box())}};
    if (reg.kind() == RegKind::Nuclear) {
        j["rows"] = reg.rows();
        j["cols"] = reg.cols();
    }
    return j;
}

RegKind reg_kind_from_string(const std::string& s) {
    if (s == "l1") return RegKind::L1;
    if (s == "nuclear") return RegKind::Nuclear;
    if (s == "zero") return RegKind::Zero;
    if (s == "squared_l2") return RegKind::SquaredL2;
    throw InvalidInputError("unknown regularizer kind: " + s);
}

Regularizer regularizer_from_json(const json& j, Index dim) {
    const RegKind kind = reg_kind_from_string(j.at("kind").get<std::string>());
    const double beta = j.value("beta", 0.0);
    std::optional<Box> box = box_from_json(j.value("box", json(nullptr)), dim);
    Index rows = 0, cols = 0;
    if (kind == RegKind::Nuclear) {
        rows = j.at("rows").get<Index>();
        cols = j.at("cols").get<Index>();
    }
    return Regularizer::make(kind, beta, std::move(box), rows, cols);
}

json map_to_json(const BlockMap& map, const fs::path& dir, const std::string& stem) {
    switch (map.kind()) {
        case MapKind::Dense: {
            const std::string file = stem + ".csv";
            write_matrix_csv(dir / file, map.matrix());
            return json{{"kind", "dense"}, {"path", file}};
        }
        case MapKind::Identity:
            return json{{"kind", "identity"}, {"dim", map.input_dim()}};
        case MapKind::RankOneColumn:
            return json{{"kind", "rank_one_column"}, {"rows", map.rows()}, {"cols", map.cols()}};
        case MapKind::EntryMask: {
            const std::string file = stem + "_mask.csv";
            std::ofstream out = open_out(dir / file);
            for (Index idx : map.mask())
                out << (idx % map.rows()) << ',' << (idx / map.rows()) << '\n';
            return json{{"kind", "entry_mask"}, {"rows", map.rows()}, {"cols", map.cols()},
                        {"path", file}};
        }
        case MapKind::Empty:
            return json{{"kind", "empty"}, {"output_dim", map.output_dim()}};
    }
    throw InvalidInputError("unknown map kind");
}

BlockMap map_from_json(const json& j, const fs::path& dir) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "dense") return BlockMap::dense(read_matrix_csv(dir / j.at("path").get<std::string>()));
    if (kind == "identity") return BlockMap::identity(j.at("dim").get<Index>());
    if (kind == "rank_one_column")
        return BlockMap::rank_one_column(j.at("rows").get<Index>(), j.at("cols").get<Index>());
    if (kind == "entry_mask") {
        Matrix pairs = read_matrix_csv(dir / j.at("path").get<std::string>());
        if (pairs.cols() != 2) throw InvalidInputError("entry mask CSV needs two columns");
        std::vector<std::pair<Index, Index>> entries;
        entries.reserve(static_cast<size_t>(pairs.rows()));
        for (Index i = 0; i < pairs.rows(); ++i)
            entries.emplace_back(static_cast<Index>(pairs(i, 0)), static_cast<Index>(pairs(i, 1)));
        return BlockMap::entry_mask(j.at("rows").get<Index>(), j.at("cols").get<Index>(), entries);
    }
    if (kind == "empty") return BlockMap::empty(j.at("output_dim").get<Index>());
    throw InvalidInputError("unknown map kind: " + kind);
}

}  // namespace

void write_problem_bundle(const fs::path& dir, const RlsdProblem& p) {
    fs::create_directories(dir);
    write_matrix_csv(dir / "b.csv", Matrix(p.b()));

    json manifest;
    manifest["b"] = "b.csv";
    manifest["block1"] = json{{"map", map_to_json(p.map1(), dir, "A1")},
                              {"regularizer", regularizer_to_json(p.reg1())}};
    manifest["block2"] = json{{"map", map_to_json(p.map2(), dir, "A2")},
                              {"regularizer", regularizer_to_json(p.reg2())}};
    if (p.canonical()) {
        manifest["f3"] = json{{"kind", "canonical"}};
    } else {
        const auto& f3 = *p.f3_quadratic();
        write_matrix_csv(dir / "f3_Q.csv", f3.quadratic());
        write_matrix_csv(dir / "f3_q.csv", Matrix(f3.linear()));
        manifest["f3"] = json{{"kind", "quadratic"}, {"Q", "f3_Q.csv"}, {"q", "f3_q.csv"},
                              {"sigma", f3.sigma()}, {"L", f3.lipschitz()}};
    }

    std::ofstream out = open_out(dir / "problem.json");
    out << manifest.dump(2) << '\n';
}

RlsdProblem read_problem(const fs::path& manifest_or_dir) {
    fs::path manifest_path = manifest_or_dir;
    if (fs::is_directory(manifest_path)) manifest_path /= "problem.json";
    std::ifstream in = open_in(manifest_path);
    json manifest = json::parse(in);
    const fs::path dir = manifest_path.parent_path();

    Matrix b_mat = read_matrix_csv(dir / manifest.at("b").get<std::string>());
    Vector b = as_vector(b_mat);

    BlockMap map1 = map_from_json(manifest.at("block1").at("map"), dir);
    BlockMap map2 = map_from_json(manifest.at("block2").at("map"), dir);
    Regularizer reg1 = regularizer_from_json(manifest.at("block1").at("regularizer"),
                                             map1.input_dim());
    Regularizer reg2 = regularizer_from_json(manifest.at("block2").at("regularizer"),
                                             map2.input_dim());

    std::optional<StronglyConvexSmooth> f3;
    const json& jf3 = manifest.at("f3");
    const std::string f3_kind = jf3.at("kind").get<std::string>();
    if (f3_kind == "quadratic") {
        Matrix q_mat = read_matrix_csv(dir / jf3.at("Q").get<std::string>());
        Matrix qvec = read_matrix_csv(dir / jf3.at("q").get<std::string>());
        if (jf3.contains("sigma") && jf3.contains("L"))
            f3.emplace(std::move(q_mat), as_vector(qvec), jf3.at("sigma").get<double>(),
                       jf3.at("L").get<double>());
        else
            f3 = StronglyConvexSmooth::from_quadratic(std::move(q_mat), as_vector(qvec));
    } else if (f3_kind != "canonical") {
        throw InvalidInputError("unknown f3 kind: " + f3_kind);
    }

    return RlsdProblem(std::move(map1), std::move(reg1), std::move(map2), std::move(reg2),
                       std::move(b), std::move(f3));
}

void write_trace_csv(const fs::path& path, const Trace& trace) {
    std::ofstream out = open_out(path);
    out << "k,objective,lagrangian,primal_residual,kkt_max,d_x1,d_x2,d_x3,d_lambda\n";
    for (const TraceRecord& r : trace.records)
        out << r.k << ',' << fmt(r.objective) << ',' << fmt(r.lagrangian) << ','
            << fmt(r.primal_residual) << ',' << fmt(r.kkt_max) << ',' << fmt(r.d_x1) << ','
            << fmt(r.d_x2) << ',' << fmt(r.d_x3) << ',' << fmt(r.d_lambda) << '\n';
}

void write_iterates_csv(const fs::path& path, const Trace& trace) {
    if (!trace.has_iterates()) throw InvalidInputError("trace has no recorded iterates");
    std::ofstream out = open_out(path);
    const IterateSnapshot& first = trace.iterates.front();
    out << 'k';
    auto header = [&](const char* name, Index n) {
        for (Index i = 0; i < n; ++i) out << ',' << name << '_' << i;
    };
    header("x1", first.x1.size());
    header("x2", first.x2.size());
    header("x3", first.x3.size());
    header("lambda", first.lambda.size());
    out << '\n';
    for (size_t k = 0; k < trace.iterates.size(); ++k) {
        const IterateSnapshot& it = trace.iterates[k];
        out << trace.records[k].k;
        auto emit = [&](const Vector& v) {
            for (Index i = 0; i < v.size(); ++i) out << ',' << fmt(v[i]);
        };
        emit(it.x1);
        emit(it.x2);
        emit(it.x3);
        emit(it.lambda);
        out << '\n';
    }
}

fs::path default_iterates_path(const fs::path& trace_path) {
    fs::path p = trace_path;
    p.replace_extension();
    p += ".iterates.csv";
    return p;
}

Trace read_trace(const fs::path& trace_csv, const fs::path& iterates_csv, bool canonical_path) {
    Trace trace;
    trace.canonical_path = canonical_path;

    std::ifstream in = open_in(trace_csv);
    std::string line;
    if (!std::getline(in, line) ||
        line != "k,objective,lagrangian,primal_residual,kkt_max,d_x1,d_x2,d_x3,d_lambda")
        throw InvalidInputError("trace CSV lacks the expected header: " + trace_csv.string());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != 9)
            throw InvalidInputError("trace CSV row with wrong column count: " + trace_csv.string());
        TraceRecord r;
        r.k = static_cast<int>(parse_double(fields[0], trace_csv));
        r.objective = parse_double(fields[1], trace_csv);
        r.lagrangian = parse_double(fields[2], trace_csv);
        r.primal_residual = parse_double(fields[3], trace_csv);
        r.kkt_max = parse_double(fields[4], trace_csv);
        r.d_x1 = parse_double(fields[5], trace_csv);
        r.d_x2 = parse_double(fields[6], trace_csv);
        r.d_x3 = parse_double(fields[7], trace_csv);
        r.d_lambda = parse_double(fields[8], trace_csv);
        trace.records.push_back(r);
    }
    if (trace.records.empty()) throw InvalidInputError("trace CSV has no rows: " + trace_csv.string());

    if (!iterates_csv.empty() && fs::exists(iterates_csv)) {
        std::ifstream itin = open_in(iterates_csv);
        if (!std::getline(itin, line))
            throw InvalidInputError("iterates CSV is empty: " + iterates_csv.string());
        auto cols = split(line, ',');
        size_t n1 = 0, n2 = 0, n3 = 0, nl = 0;
        for (const std::string& c : cols) {
            if (c.rfind("x1_", 0) == 0) ++n1;
            else if (c.rfind("x2_", 0) == 0) ++n2;
            else if (c.rfind("x3_", 0) == 0) ++n3;
            else if (c.rfind("lambda_", 0) == 0) ++nl;
        }
        while (std::getline(itin, line)) {
            if (line.empty()) continue;
            auto fields = split(line, ',');
            if (fields.size() != 1 + n1 + n2 + n3 + nl)
                throw InvalidInputError("iterates CSV row with wrong column count");
            IterateSnapshot snap;
            size_t pos = 1;
            auto take = [&](size_t n) {
                Vector v(static_cast<Index>(n));
                for (size_t i = 0; i < n; ++i) v[static_cast<Index>(i)] = parse_double(fields[pos++], iterates_csv);
                return v;
            };
            snap.x1 = take(n1);
            snap.x2 = take(n2);
            snap.x3 = take(n3);
            snap.lambda = take(nl);
            trace.iterates.push_back(std::move(snap));
        }
        if (trace.iterates.size() != trace.records.size())
            throw InvalidInputError("iterates CSV row count does not match the trace");
    }
    return trace;
}

void write_summary_json(const fs::path& path, const SolveResult& result, double gamma) {
    json j{{"status", to_string(result.status)},
           {"iterations", result.iterations},
           {"objective", result.objective},
           {"kkt_max", result.final_kkt.max},
           {"gamma", gamma}};
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_reference_json(const fs::path& path, const ReferenceSolution& ref) {
    json j{{"x1", vector_to_json(ref.x1)},     {"x2", vector_to_json(ref.x2)},
           {"x3", vector_to_json(ref.x3)},     {"lambda", vector_to_json(ref.lambda)},
           {"kkt_max", ref.kkt_max},           {"provenance", ref.provenance}};
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

ReferenceSolution read_reference_json(const fs::path& path) {
    std::ifstream in = open_in(path);
    json j = json::parse(in);
    ReferenceSolution ref;
    ref.x1 = vector_from_json(j.at("x1"));
    ref.x2 = vector_from_json(j.at("x2"));
    ref.x3 = vector_from_json(j.at("x3"));
    ref.lambda = vector_from_json(j.at("lambda"));
    ref.kkt_max = j.at("kkt_max").get<double>();
    ref.provenance = j.value("provenance", "");
    if (ref.kkt_max > 1e-11)
        throw InvalidInputError("reference solution kkt_max exceeds 1e-11: " + path.string());
    return ref;
}

json certificate_to_json(const CertificateReport& report) {
    json checks = json::array();
    for (const CertificateCheck& c : report.checks)
        checks.push_back(json{{"name", c.name},
                              {"paper_anchor", c.anchor},
                              {"pass", c.pass},
                              {"worst_violation", c.worst_violation},
                              {"at_iteration", c.at_iteration}});
    json j{{"regime", to_string(report.regime)}, {"checks", std::move(checks)}};
    j["reference"] = report.reference_used ? json{{"provenance", *report.reference_used}}
                                           : json(nullptr);
    return j;
}

void write_certificate_json(const fs::path& path, const CertificateReport& report) {
    std::ofstream out = open_out(path);
    out << certificate_to_json(report).dump(2) << '\n';
}

json gamma_range_to_json(const GammaRangeParams& params, const IntervalUnion& range) {
    json parts = json::array();
    for (const Interval& iv : range.parts()) {
        json part{{"lo", iv.lo}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}};
        part["hi"] = std::isinf(iv.hi) ? json("inf") : json(iv.hi);
        parts.push_back(std::move(part));
    }
    return json{{"params", {{"sigma", params.sigma}, {"L", params.lips},
                            {"eta1", params.eta1}, {"eta2", params.eta2}}},
                {"range", std::move(parts)},
                {"display", range.display()}};
}

void write_bench_bundle(const fs::path& dir, const GeneratedProblem& generated) {
    write_problem_bundle(dir, generated.problem);
    const BenchSpec& spec = generated.spec;
    json truth{{"family", to_string(spec.family)}, {"seed", spec.seed}};
    json spec_json{{"m", spec.m},           {"n", spec.n},
                   {"p", spec.p},           {"rank", spec.rank},
                   {"sparsity", spec.sparsity}, {"noise", spec.noise},
                   {"beta1", spec.effective_beta1()}, {"beta2", spec.effective_beta2()},
                   {"density", spec.density}};
    truth["spec"] = std::move(spec_json);
    json components;
    for (const auto& [name, value] : generated.truth) components[name] = matrix_to_json(value);
    truth["truth"] = std::move(components);
    std::ofstream out = open_out(dir / "truth.json");
    out << truth.dump(2) << '\n';
}

}  // namespace rlsd::io
