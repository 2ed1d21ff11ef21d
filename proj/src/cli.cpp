#include "facefuse/cli.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "facefuse/errors.hpp"
#include "facefuse/eval.hpp"
#include "facefuse/fusion.hpp"
#include "facefuse/synthetic.hpp"

namespace facefuse {

namespace {

Dims parse_dims(const std::string& text) {
    const auto sep = text.find('x');
    if (sep == std::string::npos) {
        throw InvalidDimensions("dimensions must look like WxH, got '" + text + "'");
    }
    try {
        size_t used_w = 0, used_h = 0;
        const int w = std::stoi(text.substr(0, sep), &used_w);
        const int h = std::stoi(text.substr(sep + 1), &used_h);
        if (used_w != sep || used_h != text.size() - sep - 1 || w < 1 || h < 1) {
            throw std::invalid_argument(text);
        }
        return Dims{w, h};
    } catch (const std::exception&) {
        throw InvalidDimensions("dimensions must be two positive integers WxH, got '" +
                                text + "'");
    }
}

std::vector<int> parse_hidden(const std::string& text) {
    std::vector<int> sizes;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size() || v < 1) {
                throw std::invalid_argument(item);
            }
            sizes.push_back(v);
        } catch (const std::exception&) {
            throw InvalidArchitecture("hidden layer sizes must be positive integers, got '" +
                                      text + "'");
        }
    }
    if (sizes.empty()) {
        throw InvalidArchitecture("at least one hidden layer size is required");
    }
    return sizes;
}

int check_k_flag(int k) {
    // -1 is the "auto" sentinel; anything else must be a valid rank request
    if (k != -1 && k < 1) {
        throw KOutOfRange("k must be at least 1");
    }
    return k == -1 ? 0 : k;
}

ReportFormat parse_format(const std::string& text) {
    if (text == "csv") return ReportFormat::csv;
    if (text == "json") return ReportFormat::json;
    throw InvalidParameters("format must be csv or json, got '" + text + "'");
}

std::string rate_to_string(double rate) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << rate;
    return out.str();
}

// Flag bundles shared by the training-capable subcommands.
struct MlpFlags {
    std::string hidden = "32";
    double lr = 0.1;
    double momentum = 0.9;
    int epochs = 2000;
    double target_loss = 1e-3;
    uint64_t seed = 42;

    void attach(CLI::App* cmd) {
        cmd->add_option("--hidden", hidden, "Hidden layer sizes, comma separated")
            ->capture_default_str();
        cmd->add_option("--lr", lr, "Backprop learning rate")->capture_default_str();
        cmd->add_option("--momentum", momentum, "Momentum coefficient in [0,1)")
            ->capture_default_str();
        cmd->add_option("--epochs", epochs, "Maximum training epochs")->capture_default_str();
        cmd->add_option("--target-loss", target_loss, "Stop when epoch MSE reaches this")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "Seed for weight initialization")
            ->capture_default_str();
    }

    ProtocolConfig to_config(int k, double visual_weight, double thermal_weight) const {
        ProtocolConfig config;
        config.k = k;
        config.hidden = parse_hidden(hidden);
        config.hyper.learning_rate = lr;
        config.hyper.momentum = momentum;
        config.hyper.max_epochs = epochs;
        config.hyper.target_loss = target_loss;
        config.hyper.seed = seed;
        config.visual_weight = visual_weight;
        config.thermal_weight = thermal_weight;
        return config;
    }
};

void print_history(const TrainingHistory& history) {
    std::cout << "training stopped after " << history.epochs_run << " epochs ("
              << (history.stop_reason == StopReason::target_reached ? "target reached"
                                                                    : "epoch cap")
              << "), final MSE " << history.epoch_mse.back() << "\n";
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Visual/thermal face fusion, eigenface projection, and MLP recognition"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    // --- synth ---
    auto* synth = app.add_subcommand("synth", "Generate a synthetic paired dataset");
    synth->set_config("--config");
    std::string synth_out;
    SyntheticSpec spec;
    std::string synth_dims = "64x64";
    synth->add_option("--out", synth_out, "Output directory")->required();
    synth->add_option("--classes", spec.classes, "Number of classes");
    synth->add_option("--train-per-class", spec.per_class_train, "Train images per class");
    synth->add_option("--test-per-class", spec.per_class_test, "Test images per class");
    synth->add_option("--dims", synth_dims, "Image dimensions WxH");
    synth->add_option("--separation", spec.separation, "Within-class noise sigma");
    synth->add_option("--seed", spec.seed, "Generator seed");
    synth->callback([&] {
        const Dims d = parse_dims(synth_dims);
        spec.width = d.width;
        spec.height = d.height;
        const DatasetManifest manifest = make_synthetic_dataset(spec, synth_out);
        std::cout << "wrote " << manifest.entries.size() << " visual/thermal pairs ("
                  << manifest.class_labels.size() << " classes) under " << synth_out << "\n";
    });

    // --- fuse ---
    auto* fuse = app.add_subcommand("fuse", "Fuse registered visual/thermal pairs");
    fuse->set_config("--config");
    std::string fuse_manifest, fuse_out, fuse_dims = "64x64";
    double visual_weight = 0.70, thermal_weight = 0.30;
    bool no_resize = false;
    fuse->add_option("--manifest", fuse_manifest, "Dataset manifest CSV")->required();
    fuse->add_option("--out", fuse_out, "Output directory for fused images")->required();
    fuse->add_option("--visual-weight", visual_weight, "Weight a for the visual image");
    fuse->add_option("--thermal-weight", thermal_weight, "Weight b for the thermal image");
    fuse->add_option("--dims", fuse_dims, "Resize both images to WxH before fusion");
    fuse->add_flag("--no-resize", no_resize, "Fuse at native size (pair must match)");
    fuse->callback([&] {
        const FusionWeights weights(visual_weight, thermal_weight);
        std::optional<Dims> target;
        if (!no_resize) {
            target = parse_dims(fuse_dims);
        }
        const DatasetManifest manifest = load_manifest(fuse_manifest);
        const FusedManifest fused = fuse_dataset(manifest, weights, fuse_out, target);
        std::cout << "fused " << fused.entries.size() << " pairs into " << fuse_out << "\n";
    });

    // --- eigen ---
    auto* eigen = app.add_subcommand("eigen", "Build the eigenface space from the train split");
    eigen->set_config("--config");
    std::string eigen_manifest, eigen_out;
    int eigen_k = -1;
    eigen->add_option("--manifest", eigen_manifest, "Fused manifest CSV")->required();
    eigen->add_option("--out", eigen_out, "Eigenspace output file")->required();
    eigen->add_option("--k", eigen_k, "Number of eigenfaces to keep")
        ->default_str("auto: min(N-1, 40)");
    eigen->callback([&] {
        const FusedManifest manifest = load_fused_manifest(eigen_manifest);
        const Eigenspace space = build_space_stage(manifest, check_k_flag(eigen_k));
        save_eigenspace(space, eigen_out);
        std::cout << "kept " << space.k() << " eigenfaces from " << space.training_count
                  << " training images -> " << eigen_out << "\n";
    });

    // --- train ---
    auto* train_cmd = app.add_subcommand("train", "Train the MLP on projected train images");
    train_cmd->set_config("--config");
    std::string train_manifest, train_space, train_out;
    MlpFlags train_flags;
    train_cmd->add_option("--manifest", train_manifest, "Fused manifest CSV")->required();
    train_cmd->add_option("--space", train_space, "Eigenspace file")->required();
    train_cmd->add_option("--out", train_out, "Model output file")->required();
    train_flags.attach(train_cmd);
    train_cmd->callback([&] {
        const FusedManifest manifest = load_fused_manifest(train_manifest);
        const Eigenspace space = load_eigenspace(train_space);
        const ProtocolConfig config = train_flags.to_config(space.k(), 0.70, 0.30);
        const TrainedClassifier trained = train_classifier_stage(manifest, space, config);
        save_model(trained.model, train_out);
        print_history(trained.history);
        std::cout << "model -> " << train_out << "\n";
    });

    // --- eval ---
    auto* eval_cmd = app.add_subcommand("eval", "Classify the test split and report rates");
    eval_cmd->set_config("--config");
    std::string eval_manifest, eval_space, eval_model, eval_out, eval_format = "json";
    double eval_vw = 0.70, eval_tw = 0.30;
    MlpFlags eval_flags; // echoed into the report only
    eval_cmd->add_option("--manifest", eval_manifest, "Fused manifest CSV")->required();
    eval_cmd->add_option("--space", eval_space, "Eigenspace file")->required();
    eval_cmd->add_option("--model", eval_model, "Model file")->required();
    eval_cmd->add_option("--out", eval_out, "Report output file")->required();
    eval_cmd->add_option("--format", eval_format, "Report format: csv or json");
    eval_cmd->add_option("--visual-weight", eval_vw, "Fusion weight echoed into the report");
    eval_cmd->add_option("--thermal-weight", eval_tw, "Fusion weight echoed into the report");
    eval_flags.attach(eval_cmd);
    eval_cmd->callback([&] {
        const FusedManifest manifest = load_fused_manifest(eval_manifest);
        const Eigenspace space = load_eigenspace(eval_space);
        const MlpModel model = load_model(eval_model);

        ConfigEcho echo;
        echo.k = space.k();
        echo.visual_weight = eval_vw;
        echo.thermal_weight = eval_tw;
        echo.hidden.assign(model.layer_sizes.begin() + 1, model.layer_sizes.end() - 1);
        echo.learning_rate = eval_flags.lr;
        echo.momentum = eval_flags.momentum;
        echo.max_epochs = eval_flags.epochs;
        echo.target_loss = eval_flags.target_loss;
        echo.seed = eval_flags.seed;

        const EvalReport report = evaluate_stage(space, model, manifest, echo);
        export_report(report, eval_out, parse_format(eval_format));
        std::cout << "overall recognition rate: " << rate_to_string(report.overall_rate)
                  << " (" << report.test_count << " test images) -> " << eval_out << "\n";
    });

    // --- pipeline ---
    auto* pipe = app.add_subcommand("pipeline", "fuse -> eigen -> train -> eval in one run");
    pipe->set_config("--config");
    std::string pipe_manifest, pipe_out, pipe_dims = "64x64", pipe_format = "json";
    double pipe_vw = 0.70, pipe_tw = 0.30;
    int pipe_k = -1;
    MlpFlags pipe_flags;
    pipe->add_option("--manifest", pipe_manifest, "Dataset manifest CSV")->required();
    pipe->add_option("--out", pipe_out, "Output directory")->required();
    pipe->add_option("--dims", pipe_dims, "Working image dimensions WxH");
    pipe->add_option("--visual-weight", pipe_vw, "Weight a for the visual image");
    pipe->add_option("--thermal-weight", pipe_tw, "Weight b for the thermal image");
    pipe->add_option("--k", pipe_k, "Number of eigenfaces to keep")
        ->default_str("auto: min(N-1, 40)");
    pipe->add_option("--format", pipe_format, "Report format: csv or json");
    pipe_flags.attach(pipe);
    pipe->callback([&] {
        const FusionWeights weights(pipe_vw, pipe_tw);
        const Dims dims = parse_dims(pipe_dims);
        const ReportFormat format = parse_format(pipe_format);
        const ProtocolConfig config =
            pipe_flags.to_config(check_k_flag(pipe_k), pipe_vw, pipe_tw);

        const std::filesystem::path out_dir(pipe_out);
        const DatasetManifest manifest = load_manifest(pipe_manifest);
        const FusedManifest fused = fuse_dataset(manifest, weights, out_dir / "fused", dims);
        std::cout << "fused " << fused.entries.size() << " pairs\n";

        const ProtocolResult result = run_protocol(fused, config);
        save_eigenspace(result.space, out_dir / "eigenspace.feig");
        save_model(result.model, out_dir / "model.fmlp");
        const auto report_path =
            out_dir / (format == ReportFormat::json ? "report.json" : "report.csv");
        export_report(result.report, report_path, format);

        std::cout << "kept " << result.space.k() << " eigenfaces\n";
        print_history(result.history);
        std::cout << "overall recognition rate: "
                  << rate_to_string(result.report.overall_rate) << " ("
                  << result.report.test_count << " test images)\n";
        std::cout << "artifacts under " << pipe_out << "\n";
    });

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::usage: return 1;
            case ErrorKind::data: return 2;
            case ErrorKind::numeric: return 3;
        }
        return 3;
    }
    return 0;
}

} // namespace facefuse
