#include "fracdyn/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace fracdyn::io {

using nlohmann::json;

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw NumericalError("failed to format double");
    return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw DataError("failed to parse number '" + text + "'");
    return value;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw DataError("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw DataError(path.string() + " is empty");
    return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
    Eigen::Index i = 0;
    for (const auto& x : arr) v(i++) = x.get<double>();
    return v;
}

json box_to_json(const Box& box) {
    return json{{"lo", vector_to_json(box.lo)}, {"hi", vector_to_json(box.hi)}};
}

Box box_from_json(const json& j) {
    return Box(vector_from_json(j.at("lo")), vector_from_json(j.at("hi")));
}

json basis_to_json(const BasisSpec& spec) {
    if (spec.family() != BasisFamily::legendre_tensor)
        throw UsageError("only the legendre-tensor family is serializable");
    return json{{"family", to_string(spec.family())},
                {"L", spec.length()},
                {"domain", box_to_json(spec.domain())}};
}

BasisSpec basis_from_json(const json& j) {
    const auto family = basis_family_from_string(j.at("family").get<std::string>());
    if (family != BasisFamily::legendre_tensor)
        throw UsageError("only the legendre-tensor family is serializable");
    return BasisSpec::legendre(j.at("L").get<Eigen::Index>(), box_from_json(j.at("domain")));
}

void append_vector_csv(std::string& out, const Eigen::VectorXd& v) {
    for (Eigen::Index c = 0; c < v.size(); ++c) {
        out += ',';
        out += format_double(v(c));
    }
}

// Per-trial tables are written in long form: i, j, value columns.
void write_trial_csv(const std::filesystem::path& path, const ExperimentDataset& ds,
                     const std::vector<Eigen::VectorXd>& data, const std::string& prefix) {
    const Eigen::Index width = data.empty() ? 0 : data.front().size();
    std::string out = "i,j";
    for (Eigen::Index c = 0; c < width; ++c) out += "," + prefix + std::to_string(c + 1);
    out += '\n';
    for (Eigen::Index i = 0; i < ds.M; ++i) {
        for (Eigen::Index j = 0; j <= ds.N; ++j) {
            out += std::to_string(i) + ',' + std::to_string(j);
            append_vector_csv(out, data[ds.idx(i, j)]);
            out += '\n';
        }
    }
    write_file_atomic(path, out);
}

std::vector<Eigen::VectorXd> read_trial_csv(const std::filesystem::path& path,
                                            const ExperimentDataset& ds) {
    auto rows = read_csv(path);
    std::vector<Eigen::VectorXd> data(static_cast<std::size_t>(ds.trials()));
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() < 3) throw DataError("malformed row in " + path.string());
        const Eigen::Index i = static_cast<Eigen::Index>(std::stol(row[0]));
        const Eigen::Index j = static_cast<Eigen::Index>(std::stol(row[1]));
        Eigen::VectorXd v(static_cast<Eigen::Index>(row.size()) - 2);
        for (std::size_t c = 2; c < row.size(); ++c)
            v(static_cast<Eigen::Index>(c) - 2) = parse_double(row[c]);
        data[ds.idx(i, j)] = std::move(v);
    }
    return data;
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
    const Eigen::Index m = traj.inputs.empty() ? 0 : traj.inputs.front().size();
    std::string out = "k,t";
    for (Eigen::Index c = 0; c < n; ++c) out += ",x" + std::to_string(c + 1);
    for (Eigen::Index c = 0; c < m; ++c) out += ",u" + std::to_string(c + 1);
    out += '\n';
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        out += std::to_string(k) + ',' + format_double(traj.time_at(static_cast<Eigen::Index>(k)));
        append_vector_csv(out, traj.states[k]);
        if (k < traj.inputs.size()) {
            append_vector_csv(out, traj.inputs[k]);
        } else {
            for (Eigen::Index c = 0; c < m; ++c) out += ',';
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    auto rows = read_csv(path);
    const auto& header = rows.front();
    Eigen::Index n = 0, m = 0;
    for (const auto& h : header) {
        if (!h.empty() && h[0] == 'x') ++n;
        if (!h.empty() && h[0] == 'u') ++m;
    }
    Trajectory traj;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        Eigen::VectorXd x(n);
        for (Eigen::Index c = 0; c < n; ++c) x(c) = parse_double(row[static_cast<std::size_t>(2 + c)]);
        traj.states.push_back(std::move(x));
        bool has_input = false;
        for (Eigen::Index c = 0; c < m; ++c) {
            const std::size_t col = static_cast<std::size_t>(2 + n + c);
            if (col < row.size() && !row[col].empty()) has_input = true;
        }
        if (has_input) {
            Eigen::VectorXd u(m);
            for (Eigen::Index c = 0; c < m; ++c)
                u(c) = parse_double(row[static_cast<std::size_t>(2 + n + c)]);
            traj.inputs.push_back(std::move(u));
        }
    }
    if (traj.states.size() >= 2) {
        const double t1 = parse_double(rows[2 < rows.size() ? 2 : 1][1]);
        traj.time_kind = (t1 == 1.0) ? TimeKind::discrete : TimeKind::continuous;
        traj.h = traj.time_kind == TimeKind::continuous ? t1 : 1.0;
    }
    return traj;
}

void write_trajectory_json(const std::filesystem::path& path, const Trajectory& traj) {
    json j;
    j["time_kind"] = to_string(traj.time_kind);
    j["h"] = traj.h;
    j["states"] = json::array();
    for (const auto& x : traj.states) j["states"].push_back(vector_to_json(x));
    j["inputs"] = json::array();
    for (const auto& u : traj.inputs) j["inputs"].push_back(vector_to_json(u));
    write_file_atomic(path, j.dump(2) + "\n");
}

Trajectory read_trajectory_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    json j = json::parse(in);
    Trajectory traj;
    traj.time_kind = time_kind_from_string(j.at("time_kind").get<std::string>());
    traj.h = j.at("h").get<double>();
    for (const auto& x : j.at("states")) traj.states.push_back(vector_from_json(x));
    for (const auto& u : j.at("inputs")) traj.inputs.push_back(vector_from_json(u));
    return traj;
}

void write_dataset(const std::filesystem::path& dir, const ExperimentDataset& ds) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    json meta;
    meta["time_kind"] = to_string(ds.time_kind);
    meta["h"] = ds.h;
    meta["M"] = ds.M;
    meta["N"] = ds.N;
    meta["n"] = ds.n;
    meta["m"] = ds.m;
    meta["seed"] = ds.seed;
    meta["active_channel"] = ds.active_channel;
    meta["domain"] = box_to_json(ds.domain);
    write_file_atomic(dir / "meta.json", meta.dump(2) + "\n");

    std::string x0 = "i";
    for (Eigen::Index c = 0; c < ds.n; ++c) x0 += ",x" + std::to_string(c + 1);
    x0 += '\n';
    for (Eigen::Index i = 0; i < ds.M; ++i) {
        x0 += std::to_string(i);
        append_vector_csv(x0, ds.x0[static_cast<std::size_t>(i)]);
        x0 += '\n';
    }
    write_file_atomic(dir / "x0.csv", x0);

    write_trial_csv(dir / "u0.csv", ds, ds.u0, "u");
    write_trial_csv(dir / "u1.csv", ds, ds.u1, "u");
    write_trial_csv(dir / "x1.csv", ds, ds.x1, "x");
    write_trial_csv(dir / "x2.csv", ds, ds.x2, "x");
    write_trial_csv(dir / "xt2.csv", ds, ds.xt2, "x");
    if (ds.time_kind == TimeKind::discrete) {
        write_trial_csv(dir / "u2.csv", ds, ds.u2, "u");
        write_trial_csv(dir / "x3.csv", ds, ds.x3, "x");
        write_trial_csv(dir / "xt3.csv", ds, ds.xt3, "x");
    }
}

ExperimentDataset read_dataset(const std::filesystem::path& dir) {
    std::ifstream in(dir / "meta.json");
    if (!in) throw DataError("cannot open " + (dir / "meta.json").string());
    json meta = json::parse(in);

    ExperimentDataset ds;
    ds.time_kind = time_kind_from_string(meta.at("time_kind").get<std::string>());
    ds.h = meta.at("h").get<double>();
    ds.M = meta.at("M").get<Eigen::Index>();
    ds.N = meta.at("N").get<Eigen::Index>();
    ds.n = meta.at("n").get<Eigen::Index>();
    ds.m = meta.at("m").get<Eigen::Index>();
    ds.seed = meta.at("seed").get<std::uint64_t>();
    ds.active_channel = meta.at("active_channel").get<Eigen::Index>();
    ds.domain = box_from_json(meta.at("domain"));

    auto x0_rows = read_csv(dir / "x0.csv");
    ds.x0.resize(static_cast<std::size_t>(ds.M));
    for (std::size_t r = 1; r < x0_rows.size(); ++r) {
        const auto& row = x0_rows[r];
        const Eigen::Index i = static_cast<Eigen::Index>(std::stol(row[0]));
        Eigen::VectorXd v(static_cast<Eigen::Index>(row.size()) - 1);
        for (std::size_t c = 1; c < row.size(); ++c)
            v(static_cast<Eigen::Index>(c) - 1) = parse_double(row[c]);
        ds.x0[static_cast<std::size_t>(i)] = std::move(v);
    }

    ds.u0 = read_trial_csv(dir / "u0.csv", ds);
    ds.u1 = read_trial_csv(dir / "u1.csv", ds);
    ds.x1 = read_trial_csv(dir / "x1.csv", ds);
    ds.x2 = read_trial_csv(dir / "x2.csv", ds);
    ds.xt2 = read_trial_csv(dir / "xt2.csv", ds);
    if (ds.time_kind == TimeKind::discrete) {
        ds.u2 = read_trial_csv(dir / "u2.csv", ds);
        ds.x3 = read_trial_csv(dir / "x3.csv", ds);
        ds.xt3 = read_trial_csv(dir / "xt3.csv", ds);
    }
    return ds;
}

void write_model_json(const std::filesystem::path& path, const LearnedModel& model) {
    json j;
    j["time_kind"] = to_string(model.time_kind);
    j["h"] = model.h;
    j["n"] = model.n;
    j["m"] = model.m;
    j["domain"] = box_to_json(model.domain);
    j["alpha_hat"] = vector_to_json(model.alpha_hat.values());
    j["basis"] = basis_to_json(model.g_hat.basis);
    j["B"] = json::array();
    for (const auto& b : model.g_hat.coefficients) j["B"].push_back(vector_to_json(b));
    j["f_samples"] = json::array();
    for (const auto& [x, f] : model.f_samples)
        j["f_samples"].push_back(json{{"x0", vector_to_json(x)}, {"f", vector_to_json(f)}});
    if (model.f_hat) j["f_hat"] = vector_to_json(model.f_hat->coeffs);

    json diag;
    diag["g_residual"] = model.diagnostics.g_residual;
    diag["g_condition"] = model.diagnostics.g_condition;
    diag["f_fit_residual"] = model.diagnostics.f_fit_residual;
    json order;
    order["raw"] = vector_to_json(model.diagnostics.order.raw);
    order["samples_used"] = model.diagnostics.order.samples_used;
    order["discrete"] = model.diagnostics.order.discrete;
    if (model.diagnostics.order.discrete) {
        order["root_plus"] = vector_to_json(model.diagnostics.order.root_plus);
        order["root_minus"] = vector_to_json(model.diagnostics.order.root_minus);
        order["residual_plus"] = vector_to_json(model.diagnostics.order.residual_plus);
        order["residual_minus"] = vector_to_json(model.diagnostics.order.residual_minus);
    }
    diag["order"] = order;
    j["diagnostics"] = diag;
    write_file_atomic(path, j.dump(2) + "\n");
}

LearnedModel read_model_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    json j = json::parse(in);

    LearnedModel model;
    model.time_kind = time_kind_from_string(j.at("time_kind").get<std::string>());
    model.h = j.at("h").get<double>();
    model.n = j.at("n").get<Eigen::Index>();
    model.m = j.at("m").get<Eigen::Index>();
    model.domain = box_from_json(j.at("domain"));
    model.alpha_hat = FractionalOrderVector(vector_from_json(j.at("alpha_hat")));
    model.g_hat.basis = basis_from_json(j.at("basis"));
    for (const auto& b : j.at("B")) model.g_hat.coefficients.push_back(vector_from_json(b));
    for (const auto& s : j.at("f_samples"))
        model.f_samples.emplace_back(vector_from_json(s.at("x0")), vector_from_json(s.at("f")));
    if (j.contains("f_hat"))
        model.f_hat = BasisExpansion{model.g_hat.basis, vector_from_json(j.at("f_hat"))};

    const json& diag = j.at("diagnostics");
    model.diagnostics.g_residual = diag.at("g_residual").get<std::vector<double>>();
    model.diagnostics.g_condition = diag.at("g_condition").get<std::vector<double>>();
    model.diagnostics.f_fit_residual = diag.at("f_fit_residual").get<double>();
    const json& order = diag.at("order");
    model.diagnostics.order.raw = vector_from_json(order.at("raw"));
    model.diagnostics.order.samples_used = order.at("samples_used").get<std::vector<long>>();
    model.diagnostics.order.discrete = order.at("discrete").get<bool>();
    if (model.diagnostics.order.discrete) {
        model.diagnostics.order.root_plus = vector_from_json(order.at("root_plus"));
        model.diagnostics.order.root_minus = vector_from_json(order.at("root_minus"));
        model.diagnostics.order.residual_plus = vector_from_json(order.at("residual_plus"));
        model.diagnostics.order.residual_minus = vector_from_json(order.at("residual_minus"));
    }
    return model;
}

void write_error_report(const std::filesystem::path& csv_path,
                        const std::filesystem::path& summary_path, const ErrorReport& report) {
    const Eigen::Index n = report.f_truth.cols();
    const Eigen::Index nm = report.g_truth.cols();
    const Eigen::Index m = n > 0 ? nm / n : 0;

    std::string out;
    for (Eigen::Index c = 0; c < report.grid.cols(); ++c)
        out += (c ? "," : "") + ("x" + std::to_string(c + 1));
    out += ",component,truth,estimate,abs_error\n";
    for (Eigen::Index p = 0; p < report.grid.rows(); ++p) {
        std::string point;
        for (Eigen::Index c = 0; c < report.grid.cols(); ++c)
            point += (c ? "," : "") + format_double(report.grid(p, c));
        for (Eigen::Index r = 0; r < n; ++r) {
            out += point + ",f" + std::to_string(r + 1) + ',' +
                   format_double(report.f_truth(p, r)) + ',' +
                   format_double(report.f_estimate(p, r)) + ',' +
                   format_double(report.f_abs_error(p, r)) + '\n';
        }
        for (Eigen::Index l = 0; l < m; ++l) {
            for (Eigen::Index r = 0; r < n; ++r) {
                const Eigen::Index col = l * n + r;
                out += point + ",g" + std::to_string(r + 1) + std::to_string(l + 1) + ',' +
                       format_double(report.g_truth(p, col)) + ',' +
                       format_double(report.g_estimate(p, col)) + ',' +
                       format_double(report.g_abs_error(p, col)) + '\n';
            }
        }
    }
    write_file_atomic(csv_path, out);

    json summary;
    summary["max_abs_error"] = report.max_abs_error;
    summary["mean_abs_error"] = report.mean_abs_error;
    summary["max_abs_error_f"] = report.max_abs_error_f;
    summary["mean_abs_error_f"] = report.mean_abs_error_f;
    summary["max_abs_error_g"] = report.max_abs_error_g;
    summary["mean_abs_error_g"] = report.mean_abs_error_g;
    summary["grid_points"] = report.grid.rows();
    write_file_atomic(summary_path, summary.dump(2) + "\n");
}

void write_comparison_report(const std::filesystem::path& csv_path,
                             const std::filesystem::path& summary_path,
                             const ComparisonReport& report) {
    const Eigen::Index n = report.truth.states.empty() ? 0 : report.truth.states.front().size();
    std::string out = "k,t";
    for (Eigen::Index c = 0; c < n; ++c) out += ",x_truth" + std::to_string(c + 1);
    for (Eigen::Index c = 0; c < n; ++c) out += ",x_frac" + std::to_string(c + 1);
    for (Eigen::Index c = 0; c < n; ++c) out += ",x_int" + std::to_string(c + 1);
    out += ",dev_frac,dev_int\n";
    for (std::size_t k = 0; k < report.dev_fractional.size(); ++k) {
        out += std::to_string(k) + ',' +
               format_double(report.truth.time_at(static_cast<Eigen::Index>(k)));
        append_vector_csv(out, report.truth.states[k]);
        append_vector_csv(out, report.fractional.states[k]);
        append_vector_csv(out, report.integer.states[k]);
        out += ',' + format_double(report.dev_fractional[k]);
        out += ',' + format_double(report.dev_integer[k]);
        out += '\n';
    }
    write_file_atomic(csv_path, out);

    json summary;
    summary["max_dev_fractional"] = report.max_dev_fractional;
    summary["max_dev_integer"] = report.max_dev_integer;
    summary["common_steps"] = report.common_steps;
    summary["truth_diverged"] = report.truth_diverged;
    summary["fractional_diverged"] = report.fractional_diverged;
    summary["integer_diverged"] = report.integer_diverged;
    write_file_atomic(summary_path, summary.dump(2) + "\n");
}

}  // namespace fracdyn::io
