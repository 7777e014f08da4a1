#include "roifc/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roifc/ingest.hpp"
#include "roifc/svg.hpp"

namespace roifc {

namespace {

constexpr const char* kModule = "cli";
constexpr const char* kInsideColor = "#1f77b4";
constexpr const char* kOutsideColor = "#d62728";

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::IoError, kModule, "cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw Error(ErrorKind::IoError, kModule, "write to '" + path.string() + "' failed");
    }
}

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string embedding_csv(const Embedding2D& embedding) {
    std::string out = "index,z1,z2\n";
    for (std::size_t i = 0; i < embedding.z.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += shortest(embedding.z[i][0]);
        out += ',';
        out += shortest(embedding.z[i][1]);
        out += '\n';
    }
    return out;
}

std::string tsne_figure(const AnalysisReport& report) {
    ScatterSeries inside{"inside", kInsideColor, {}};
    ScatterSeries outside{"outside", kOutsideColor, {}};
    for (std::size_t i = 0; i < report.embedding.z.size(); ++i) {
        (report.record_roi[i] == RoiFlag::Inside ? inside : outside)
            .points.push_back(report.embedding.z[i]);
    }
    return svg_scatter({inside, outside}, "2-D embedding by ROI class");
}

std::string similarity_figure(const AnalysisReport& report) {
    std::vector<BarDatum> bars;
    for (const auto& group : report.similarity) {
        bars.push_back({group.key + " in-in", group.summary.mu_inside,
                        group.summary.sigma_inside, group.ttest.significant, kInsideColor});
        bars.push_back({group.key + " in-out", group.summary.mu_cross,
                        group.summary.sigma_cross, false, kOutsideColor});
    }
    return svg_bars(bars, "Pair cosine similarity (* = significant)", "mean similarity");
}

std::string entropy_figure(const AnalysisReport& report) {
    const std::vector<BarDatum> bars = {
        {"inside", report.entropy_inside.mean_entropy, 0.0, false, kInsideColor},
        {"outside", report.entropy_outside.mean_entropy, 0.0, false, kOutsideColor},
    };
    return svg_bars(bars, "Mean per-vehicle feature entropy", "entropy");
}

std::string rmse_figure(const AnalysisReport& report) {
    const std::vector<BarDatum> bars = {
        {"inside", report.cluster_inside.rmse, 0.0, false, kInsideColor},
        {"outside", report.cluster_outside.rmse, 0.0, false, kOutsideColor},
    };
    return svg_bars(bars, "Embedding variance spread (RMSE)", "rmse");
}

std::pair<std::string, std::string> parse_camera_pair(const std::string& raw) {
    const auto comma = raw.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == raw.size() ||
        raw.find(',', comma + 1) != std::string::npos) {
        throw Error(ErrorKind::InvalidArgument, kModule,
                    "--camera-pair expects 'id1,id2', got '" + raw + "'");
    }
    return {raw.substr(0, comma), raw.substr(comma + 1)};
}

void print_counts_table(const std::string& heading,
                        const std::map<std::string, SliceCounts>& rows) {
    std::printf("%-16s %10s %10s %10s\n", heading.c_str(), "vehicles", "inside", "outside");
    for (const auto& [name, c] : rows) {
        std::printf("%-16s %10zu %10zu %10zu\n", name.c_str(), c.n_vehicles,
                    c.inside_images, c.outside_images);
    }
}

int cmd_report(const std::filesystem::path& input, const std::filesystem::path& outdir,
               const ReportOptions& options) {
    const Dataset dataset = load_auto(input);
    const AnalysisReport report = build_report(dataset, options);
    write_report_files(report, outdir);

    for (const auto& group : report.similarity) {
        std::printf(
            "%s: N=%zu mu_inside=%.6f mu_cross=%.6f t=%.6f p=%.6g significant=%s\n",
            group.key.c_str(), group.n_vehicles, group.summary.mu_inside,
            group.summary.mu_cross, group.ttest.t, group.ttest.p_one_sided,
            group.ttest.significant ? "yes" : "no");
    }
    std::printf("entropy: inside=%.6f outside=%.6f (bins=%zu)\n",
                report.entropy_inside.mean_entropy, report.entropy_outside.mean_entropy,
                report.config.entropy_bins);
    std::printf("embedding: %zu points, kl %.6f -> %.6f\n", report.embedding.z.size(),
                report.embedding.kl_initial, report.embedding.kl_final);
    std::printf("cluster: inside total_variance=%.6f rmse=%.6f | outside total_variance=%.6f rmse=%.6f\n",
                report.cluster_inside.total_variance, report.cluster_inside.rmse,
                report.cluster_outside.total_variance, report.cluster_outside.rmse);
    if (report.intra_inter_inside) {
        std::printf("intra/inter (inside): %.6f / %.6f\n",
                    report.intra_inter_inside->intra_class,
                    report.intra_inter_inside->inter_class);
    }
    if (report.intra_inter_outside) {
        std::printf("intra/inter (outside): %.6f / %.6f\n",
                    report.intra_inter_outside->intra_class,
                    report.intra_inter_outside->inter_class);
    }
    std::printf("wrote %s\n", (outdir / "report.json").string().c_str());
    return 0;
}

int cmd_synth(const SyntheticSpec& spec, const std::filesystem::path& output) {
    const Dataset dataset = generate_synthetic(spec);
    write_auto(dataset, output);
    std::printf("wrote %zu records (%zu vehicles, dim %zu) to %s\n",
                dataset.records().size(), dataset.vehicle_count(), dataset.dim(),
                output.string().c_str());
    return 0;
}

int cmd_validate(const std::filesystem::path& input) {
    const Dataset dataset = load_auto(input);
    std::printf("records: %zu, vehicles: %zu, dim: %zu\n", dataset.records().size(),
                dataset.vehicle_count(), dataset.dim());
    std::printf("\n");
    print_counts_table("condition", counts_by_condition(dataset));
    std::printf("\n");
    print_counts_table("camera", counts_by_camera(dataset));
    return 0;
}

int cmd_convert(const std::filesystem::path& input, const std::filesystem::path& output) {
    const Dataset dataset = load_auto(input);
    write_auto(dataset, output);
    std::printf("wrote %zu records to %s\n", dataset.records().size(),
                output.string().c_str());
    return 0;
}

}  // namespace

void write_report_files(const AnalysisReport& report, const std::filesystem::path& outdir) {
    std::error_code ec;
    std::filesystem::create_directories(outdir / "figures", ec);
    if (ec) {
        throw Error(ErrorKind::IoError, kModule,
                    "cannot create '" + (outdir / "figures").string() + "': " + ec.message());
    }
    write_text_file(outdir / "report.json", report.to_json());
    write_text_file(outdir / "embedding.csv", embedding_csv(report.embedding));
    write_text_file(outdir / "figures" / "tsne.svg", tsne_figure(report));
    write_text_file(outdir / "figures" / "similarity.svg", similarity_figure(report));
    write_text_file(outdir / "figures" / "entropy.svg", entropy_figure(report));
    write_text_file(outdir / "figures" / "rmse.svg", rmse_figure(report));
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"ROI feature-consistency analysis toolkit"};
    app.require_subcommand(1);

    std::string report_input;
    std::string report_out = "out";
    std::string mode_name = "within";
    std::string condition;
    std::string camera_pair_raw;
    AnalysisConfig config{};
    auto* report_cmd =
        app.add_subcommand("report", "Run the full analysis and write report files");
    report_cmd->add_option("input", report_input, "Input dataset (.csv or .rfcs)")
        ->required();
    report_cmd->add_option("--out", report_out, "Output directory")
        ->capture_default_str();
    report_cmd->add_option("--mode", mode_name, "Pairing mode: within or cross")
        ->check(CLI::IsMember({"within", "cross"}))
        ->capture_default_str();
    report_cmd->add_option("--alpha", config.alpha, "One-sided significance level")
        ->capture_default_str();
    report_cmd->add_option("--bins", config.entropy_bins, "Entropy histogram bins")
        ->capture_default_str();
    report_cmd->add_option("--log-base", config.entropy_log_base, "Entropy logarithm base")
        ->capture_default_str();
    report_cmd->add_option("--perplexity", config.tsne_perplexity, "Embedding perplexity")
        ->capture_default_str();
    report_cmd->add_option("--iters", config.tsne_iterations, "Embedding iterations")
        ->capture_default_str();
    report_cmd->add_option("--seed", config.rng_seed, "Embedding initialization seed")
        ->capture_default_str();
    report_cmd->add_option("--condition", condition, "Analyze only this condition tag");
    report_cmd->add_option("--camera-pair", camera_pair_raw,
                           "Cross mode cameras as 'id1,id2'");

    // Flag defaults describe a small but non-degenerate dataset: enough
    // vehicles and images for every report stage, clearly separated classes.
    SyntheticSpec spec{};
    spec.n_vehicles = 10;
    spec.images_inside_per_vehicle = 4;
    spec.images_outside_per_vehicle = 4;
    spec.dim = 16;
    spec.sigma_inside = 0.05;
    spec.sigma_outside = 0.3;
    spec.seed = 42;
    std::string synth_output;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth_cmd->add_option("output", synth_output, "Output path (.csv or .rfcs)")
        ->required();
    synth_cmd->add_option("--vehicles", spec.n_vehicles, "Number of vehicles")
        ->capture_default_str();
    synth_cmd->add_option("--inside", spec.images_inside_per_vehicle,
                          "Inside images per vehicle")
        ->capture_default_str();
    synth_cmd->add_option("--outside", spec.images_outside_per_vehicle,
                          "Outside images per vehicle")
        ->capture_default_str();
    synth_cmd->add_option("--dim", spec.dim, "Feature dimension")->capture_default_str();
    synth_cmd->add_option("--sigma-in", spec.sigma_inside, "Inside noise scale")
        ->capture_default_str();
    synth_cmd->add_option("--sigma-out", spec.sigma_outside, "Outside noise scale")
        ->capture_default_str();
    synth_cmd->add_option("--seed", spec.seed, "Generator seed")->capture_default_str();

    std::string validate_input;
    auto* validate_cmd = app.add_subcommand("validate", "Load a dataset and print its counts");
    validate_cmd->add_option("input", validate_input, "Input dataset (.csv or .rfcs)")
        ->required();

    std::string convert_input;
    std::string convert_output;
    auto* convert_cmd = app.add_subcommand("convert", "Convert between .csv and .rfcs");
    convert_cmd->add_option("input", convert_input, "Input dataset")->required();
    convert_cmd->add_option("output", convert_output, "Output dataset")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (report_cmd->parsed()) {
            ReportOptions options;
            options.config = config;
            options.mode = mode_name == "cross" ? AnalysisMode::Cross : AnalysisMode::Within;
            options.condition = condition;
            if (!camera_pair_raw.empty()) {
                options.camera_pair = parse_camera_pair(camera_pair_raw);
            }
            return cmd_report(report_input, report_out, options);
        }
        if (synth_cmd->parsed()) return cmd_synth(spec, synth_output);
        if (validate_cmd->parsed()) return cmd_validate(validate_input);
        if (convert_cmd->parsed()) return cmd_convert(convert_input, convert_output);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_numerical(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace roifc
