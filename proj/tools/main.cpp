// pcblend command-line tool.
//
// Subcommands: cluster, blend, style-transfer, style-sample, metrics,
// gen-dataset, gen-design, export-svg. Exit codes: 0 success, 1 usage error,
// 2 data/processing error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcblend/cluster.hpp"
#include "pcblend/datagen.hpp"
#include "pcblend/embed.hpp"
#include "pcblend/io.hpp"
#include "pcblend/kde.hpp"
#include "pcblend/metrics.hpp"
#include "pcblend/parallel.hpp"
#include "pcblend/pipelines.hpp"
#include "pcblend/rng.hpp"
#include "pcblend/svg.hpp"

namespace {

namespace fs = std::filesystem;
using namespace pcblend;

int axis_from_name(const std::string& name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  throw std::invalid_argument("axis must be x, y or z, got '" + name + "'");
}

// k from --k / --m: an explicit k wins, otherwise n / m.
int resolve_k(std::size_t n, int k, int m) {
  if (k > 0) {
    if (n % static_cast<std::size_t>(k) != 0) {
      throw std::invalid_argument(std::to_string(n) +
                                  " points are not divisible into k=" +
                                  std::to_string(k) + " clusters");
    }
    return k;
  }
  if (m < 1 || n % static_cast<std::size_t>(m) != 0) {
    throw std::invalid_argument(std::to_string(n) +
                                " points are not divisible into clusters of " +
                                std::to_string(m) + "; pass --k or --m");
  }
  return static_cast<int>(n / static_cast<std::size_t>(m));
}

std::string lambda_tag(double l) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", l);
  return buf;
}

struct EmbedderFlags {
  std::string kind = "ot";
  int latent_dim = defaults::pca_latent_dim;
  std::string model_path;
  std::string save_model_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--embedder", kind, "Cluster embedder: ot, pca or external")
        ->check(CLI::IsMember({"ot", "pca", "external"}))
        ->capture_default_str();
    cmd->add_option("--latent-dim", latent_dim,
                    "PCA latent dimension (capped at the training-set size)")
        ->capture_default_str();
    cmd->add_option("--model", model_path,
                    "Load a saved embedder model instead of fitting one "
                    "(required for --embedder external)");
    cmd->add_option("--save-model", save_model_path,
                    "Write the fitted PCA model to this path");
  }

  EmbedderFactory factory() const {
    if (kind == "ot") {
      if (!model_path.empty() || !save_model_path.empty()) {
        throw std::invalid_argument("--model/--save-model require --embedder "
                                    "pca or external");
      }
      return ot_factory();
    }
    if (kind == "external" || !model_path.empty()) {
      if (model_path.empty()) {
        throw std::invalid_argument("--embedder external needs --model");
      }
      auto embedder =
          std::make_shared<PcaEmbedder>(load_pca_model(model_path));
      return fixed_factory(std::move(embedder));
    }
    // pca, fitted on the fly
    const std::size_t d = static_cast<std::size_t>(std::max(1, latent_dim));
    const std::string save = save_model_path;
    return [d, save](const std::vector<PointCloud>& training) {
      const std::size_t dd =
          std::min({d, training.size(), 3 * training.at(0).size()});
      PcaModel model = pca_fit(training, dd);
      if (!save.empty()) save_pca_model(model, save);
      return std::make_shared<PcaEmbedder>(std::move(model));
    };
  }
};

void write_outputs(const std::vector<PointCloud>& clouds,
                   const std::vector<double>& lambdas, const std::string& out,
                   const std::string& out_dir, const std::string& stem,
                   bool svg, const std::string& svg_axis) {
  if (!out.empty() && clouds.size() != 1) {
    throw std::invalid_argument("--out works with a single --lambda; "
                                "use --out-dir for sweeps");
  }
  std::vector<fs::path> paths;
  if (!out.empty()) {
    paths.emplace_back(out);
  } else {
    if (out_dir.empty()) {
      throw std::invalid_argument("pass --out (single lambda) or --out-dir");
    }
    fs::create_directories(out_dir);
    for (double l : lambdas) {
      paths.emplace_back(fs::path(out_dir) /
                         (stem + "_" + lambda_tag(l) + ".ply"));
    }
  }
  for (std::size_t i = 0; i < clouds.size(); ++i) {
    store_cloud(clouds[i], paths[i]);
    if (svg) {
      // SVG projections assume the unit cube; re-normalize a copy.
      fs::path svg_path = paths[i];
      svg_path.replace_extension(".svg");
      export_svg(normalize_unit_cube(clouds[i]).first,
                 axis_from_name(svg_axis), svg_path);
    }
    std::cout << paths[i].string() << "\n";
  }
}

// ---- subcommand options ----

struct ClusterOpts {
  std::string input, out_dir;
  int k = 0, m = defaults::cluster_size;
  int max_iters = defaults::kmeans_max_iters;
  double tol = defaults::kmeans_tol;
  std::uint64_t seed = defaults::seed;
};

struct BlendOpts {
  std::string a, b, out, out_dir;
  std::vector<double> lambdas;
  int k = 0, m = defaults::cluster_size;
  std::uint64_t seed = defaults::seed;
  std::uint64_t seed_b = defaults::seed;
  bool naive = false;
  bool svg = false;
  std::string svg_axis = "z";
  EmbedderFlags embedder;
};

struct StyleOpts {
  std::string input, design, design_file, out, out_dir;
  std::vector<double> lambdas;
  int k = 0, m = defaults::cluster_size;
  std::size_t design_points = 0;  // 0 = match the input size
  double bandwidth = defaults::kde_bandwidth;
  std::uint64_t seed = defaults::seed;
  bool svg = false;
  std::string svg_axis = "z";
  EmbedderFlags embedder;
  // design params for generated designs
  double period = 0.25, thickness = 0.1, cut_width = 0.04;
  int voids = 6, cuts = 3;

  PointCloud make_design(std::size_t n) const {
    if (!design_file.empty()) {
      auto [cloud, t] = normalize_unit_cube(load_cloud(design_file));
      return cloud;
    }
    if (design.empty()) {
      throw std::invalid_argument("pass --design or --design-file");
    }
    DesignParams p;
    p.period = period;
    p.thickness = thickness;
    p.cut_width = cut_width;
    p.voids = voids;
    p.cuts = cuts;
    const std::size_t count = design_points > 0 ? design_points : n;
    // The design gets its own stream so it does not interact with the
    // clustering / subsampling draws.
    return gen_design(design_kind_from_string(design), count, p,
                      derive_seed(seed, 77));
  }
};

struct MetricsOpts {
  std::string a, b;
  bool do_chamfer = false, do_emd = false, do_sinkhorn = false,
       do_combined = false, csv = false;
  SinkhornParams sp;
  double alpha_emd = 1.0, alpha_chamfer = 1.0;
  std::string norm = "sum", emd_mode = "exact";
};

struct GenDatasetOpts {
  std::size_t count = 40, points = 4096;
  std::uint64_t seed = defaults::seed;
  std::string out_dir;
};

struct GenDesignOpts {
  std::string kind, out;
  std::size_t points = 4096;
  std::uint64_t seed = defaults::seed;
  double period = 0.25, thickness = 0.1, cut_width = 0.04;
  int voids = 6, cuts = 3;
};

struct SvgOpts {
  std::string input, out, axis = "z";
  double radius = 1.5, canvas = 512.0;
  bool no_normalize = false;
};

void run_cluster(const ClusterOpts& o) {
  const PointCloud cloud = load_cloud(o.input);
  const int k = resolve_k(cloud.size(), o.k, o.m);
  const ClusterSet cs =
      constrained_kmeans(cloud, k, o.seed, o.max_iters, o.tol);
  save_cluster_set(cs, o.out_dir);
  std::cout << "k " << cs.k() << "\nm " << cs.m() << "\niterations "
            << cs.iterations << "\nobjective " << cs.objective << "\n";
}

void run_blend(const BlendOpts& o) {
  const PointCloud a_raw = load_cloud(o.a);
  const PointCloud b_raw = load_cloud(o.b);
  const int k = resolve_k(a_raw.size(), o.k, o.m);
  auto [a, ta] = normalize_unit_cube(a_raw);
  auto [b, tb] = normalize_unit_cube(b_raw);

  std::vector<PointCloud> blends;
  if (o.naive) {
    for (double l : o.lambdas) {
      blends.push_back(
          naive_match_blend(a, b, l, k, o.embedder.factory(), o.seed, o.seed_b));
    }
  } else {
    blends = blend_pipeline_sweep(a, b, o.lambdas, k, o.embedder.factory(),
                                  o.seed);
  }

  // Blending happens in normalized space; map back with the lambda-mixed
  // transform so lambda = 1 lands exactly in a's frame and lambda = 0 in b's.
  for (std::size_t i = 0; i < blends.size(); ++i) {
    const double l = o.lambdas[i];
    NormalizationTransform t;
    t.scale = l * ta.scale + (1.0 - l) * tb.scale;
    t.offset = l * ta.offset + (1.0 - l) * tb.offset;
    blends[i] = t.invert(blends[i]);
  }
  write_outputs(blends, o.lambdas, o.out, o.out_dir, "blend", o.svg,
                o.svg_axis);
}

void run_style_transfer(const StyleOpts& o) {
  const PointCloud raw = load_cloud(o.input);
  const int k = resolve_k(raw.size(), o.k, o.m);
  auto [x, tx] = normalize_unit_cube(raw);
  const PointCloud design = o.make_design(x.size());

  std::vector<PointCloud> outs = style_transfer_sweep(
      x, design, o.lambdas, k, o.embedder.factory(), o.bandwidth, o.seed);
  for (PointCloud& c : outs) c = tx.invert(c);
  write_outputs(outs, o.lambdas, o.out, o.out_dir, "style", o.svg, o.svg_axis);
}

void run_style_sample(const StyleOpts& o) {
  if (o.out.empty()) throw std::invalid_argument("style-sample needs --out");
  const PointCloud raw = load_cloud(o.input);
  auto [x, tx] = normalize_unit_cube(raw);
  const PointCloud design = o.make_design(x.size());
  const PointCloud source = style_source(x, design, o.bandwidth, o.seed);
  store_cloud(tx.invert(source), o.out);
  std::cout << o.out << "\n";
}

void run_metrics(const MetricsOpts& o) {
  if (!o.do_chamfer && !o.do_emd && !o.do_sinkhorn && !o.do_combined) {
    throw CLI::ValidationError(
        "metrics",
        "pick at least one of --chamfer, --exact-emd, --sinkhorn, --combined");
  }
  const PointCloud a = load_cloud(o.a);
  const PointCloud b = load_cloud(o.b);
  if (o.csv) std::cout << "metric,value,seconds,note\n";
  using clock = std::chrono::steady_clock;
  auto emit = [&](const char* name, double value, clock::time_point t0,
                  const char* note) {
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    char vbuf[64], tbuf[32];
    std::snprintf(vbuf, sizeof vbuf, "%.17g", value);
    std::snprintf(tbuf, sizeof tbuf, "%.3f", secs);
    if (o.csv) {
      std::cout << name << "," << vbuf << "," << tbuf << "," << note << "\n";
    } else {
      std::cout << name << " " << vbuf << " " << tbuf << "s";
      if (*note) std::cout << " (" << note << ")";
      std::cout << "\n";
    }
  };
  if (o.do_chamfer) {
    const auto t0 = clock::now();
    emit("chamfer", chamfer(a, b), t0, "");
  }
  if (o.do_emd) {
    const auto t0 = clock::now();
    emit("emd", emd_exact(a, b).cost, t0, "");
  }
  if (o.do_sinkhorn) {
    const auto t0 = clock::now();
    const SinkhornResult r = sinkhorn_divergence(a, b, o.sp);
    emit("sinkhorn", r.value, t0, r.converged ? "" : "not converged");
  }
  if (o.do_combined) {
    const auto t0 = clock::now();
    const double v = combined_loss(
        a, b, LossWeights{o.alpha_emd, o.alpha_chamfer},
        o.emd_mode == "exact" ? EmdMode::exact : EmdMode::sinkhorn,
        o.norm == "mean" ? Normalization::mean : Normalization::sum, o.sp);
    emit("combined", v, t0, "");
  }
}

void run_gen_dataset(const GenDatasetOpts& o) {
  if (o.out_dir.empty()) throw std::invalid_argument("gen-dataset needs --out-dir");
  const auto corpus = gen_dataset(o.count, o.points, o.seed);
  fs::create_directories(o.out_dir);
  std::ofstream manifest(fs::path(o.out_dir) / "manifest.txt");
  if (!manifest) {
    throw std::runtime_error("cannot write manifest in " + o.out_dir);
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "cloud_%04zu.ply", i);
    store_cloud(corpus[i].cloud, fs::path(o.out_dir) / name);
    manifest << "cloud " << i << " kind " << to_string(corpus[i].kind)
             << " shells " << corpus[i].params.shells << " planes "
             << corpus[i].params.planes << " pitch " << corpus[i].params.pitch
             << " strut_radius " << corpus[i].params.strut_radius << " seed "
             << corpus[i].seed << " file " << name << "\n";
  }
  std::cout << "wrote " << corpus.size() << " clouds to " << o.out_dir << "\n";
}

void run_gen_design(const GenDesignOpts& o) {
  if (o.out.empty()) throw std::invalid_argument("gen-design needs --out");
  DesignParams p;
  p.period = o.period;
  p.thickness = o.thickness;
  p.cut_width = o.cut_width;
  p.voids = o.voids;
  p.cuts = o.cuts;
  const PointCloud cloud =
      gen_design(design_kind_from_string(o.kind), o.points, p, o.seed);
  store_cloud(cloud, o.out);
  std::cout << o.out << "\n";
}

void run_export_svg(const SvgOpts& o) {
  PointCloud cloud = load_cloud(o.input);
  if (!o.no_normalize) cloud = normalize_unit_cube(cloud).first;
  SvgOptions opts;
  opts.point_radius = o.radius;
  opts.canvas = o.canvas;
  export_svg(cloud, axis_from_name(o.axis), o.out, opts);
  std::cout << o.out << "\n";
}

void attach_style_flags(CLI::App* cmd, StyleOpts& o, bool sampling_only) {
  cmd->add_option("--input", o.input, "Input cloud (.ply or .xyz)")->required();
  cmd->add_option("--design", o.design,
                  "Generated design kind: stripes, porous or cuts")
      ->check(CLI::IsMember({"stripes", "porous", "cuts"}));
  cmd->add_option("--design-file", o.design_file,
                  "Load the design cloud from a file instead");
  cmd->add_option("--design-points", o.design_points,
                  "Design cloud size (default: input size)");
  cmd->add_option("--bandwidth", o.bandwidth, "KDE bandwidth")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--period", o.period, "stripes: slab period")
      ->capture_default_str();
  cmd->add_option("--thickness", o.thickness, "stripes: slab thickness")
      ->capture_default_str();
  cmd->add_option("--voids", o.voids, "porous: number of voids")
      ->capture_default_str();
  cmd->add_option("--cuts", o.cuts, "cuts: number of slits")
      ->capture_default_str();
  cmd->add_option("--cut-width", o.cut_width, "cuts: slit width")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output file");
  if (!sampling_only) {
    cmd->add_option("--lambda", o.lambdas,
                    "Blend weight(s) in [0,1]; 1 = pure input geometry")
        ->required();
    cmd->add_option("--k", o.k, "Number of clusters (overrides --m)");
    cmd->add_option("--m", o.m, "Points per cluster")->capture_default_str();
    cmd->add_option("--out-dir", o.out_dir, "Output directory for sweeps");
    cmd->add_flag("--svg", o.svg, "Also write an SVG projection per output");
    cmd->add_option("--svg-axis", o.svg_axis, "SVG projection axis")
        ->check(CLI::IsMember({"x", "y", "z"}))
        ->capture_default_str();
    o.embedder.attach(cmd);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pcblend: balanced clustering, transport metrics and cluster-aligned "
      "blending for volumetric point clouds"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read options from a key=value config file (one per line)");
  int threads = 0;
  app.add_option("--threads", threads, "Cap worker threads (0 = hardware)")
      ->capture_default_str();

  ClusterOpts cluster_o;
  auto* cluster_cmd =
      app.add_subcommand("cluster", "Balanced k-means clustering of a cloud");
  cluster_cmd->add_option("--input", cluster_o.input, "Input cloud")->required();
  cluster_cmd->add_option("--k", cluster_o.k, "Number of clusters (overrides --m)");
  cluster_cmd->add_option("--m", cluster_o.m, "Points per cluster")
      ->capture_default_str();
  cluster_cmd->add_option("--max-iters", cluster_o.max_iters, "Iteration cap")
      ->capture_default_str();
  cluster_cmd->add_option("--tol", cluster_o.tol, "Centroid movement tolerance")
      ->capture_default_str();
  cluster_cmd->add_option("--seed", cluster_o.seed, "RNG seed")
      ->capture_default_str();
  cluster_cmd->add_option("--out-dir", cluster_o.out_dir, "Output directory")
      ->required();
  cluster_cmd->callback([&] {
    set_max_threads(threads);
    run_cluster(cluster_o);
  });

  BlendOpts blend_o;
  auto* blend_cmd =
      app.add_subcommand("blend", "Cluster-aligned blend of two clouds");
  blend_cmd->add_option("--a", blend_o.a, "First cloud (lambda = 1 endpoint)")
      ->required();
  blend_cmd->add_option("--b", blend_o.b, "Second cloud (lambda = 0 endpoint)")
      ->required();
  blend_cmd->add_option("--lambda", blend_o.lambdas, "Blend weight(s) in [0,1]")
      ->required();
  blend_cmd->add_option("--k", blend_o.k, "Number of clusters (overrides --m)");
  blend_cmd->add_option("--m", blend_o.m, "Points per cluster")
      ->capture_default_str();
  blend_cmd->add_option("--seed", blend_o.seed, "RNG seed")
      ->capture_default_str();
  blend_cmd->add_flag("--naive", blend_o.naive,
                      "Ablation: independent clusterings + greedy centroid "
                      "matching (expect artifacts)");
  blend_cmd->add_option("--seed-b", blend_o.seed_b,
                        "Seed for b's clustering with --naive");
  blend_cmd->add_option("--out", blend_o.out, "Output file (single lambda)");
  blend_cmd->add_option("--out-dir", blend_o.out_dir,
                        "Output directory for sweeps");
  blend_cmd->add_flag("--svg", blend_o.svg,
                      "Also write an SVG projection per output");
  blend_cmd->add_option("--svg-axis", blend_o.svg_axis, "SVG projection axis")
      ->check(CLI::IsMember({"x", "y", "z"}))
      ->capture_default_str();
  blend_o.embedder.attach(blend_cmd);
  blend_cmd->callback([&] {
    set_max_threads(threads);
    run_blend(blend_o);
  });

  StyleOpts style_o;
  auto* style_cmd = app.add_subcommand(
      "style-transfer", "Blend a cloud towards a design's style");
  attach_style_flags(style_cmd, style_o, false);
  style_cmd->callback([&] {
    set_max_threads(threads);
    run_style_transfer(style_o);
  });

  StyleOpts sample_o;
  auto* sample_cmd = app.add_subcommand(
      "style-sample", "Emit the density-matched style source cloud");
  attach_style_flags(sample_cmd, sample_o, true);
  sample_cmd->callback([&] {
    set_max_threads(threads);
    run_style_sample(sample_o);
  });

  MetricsOpts metrics_o;
  auto* metrics_cmd =
      app.add_subcommand("metrics", "Distances between two clouds");
  metrics_cmd->add_option("--a", metrics_o.a, "First cloud")->required();
  metrics_cmd->add_option("--b", metrics_o.b, "Second cloud")->required();
  metrics_cmd->add_flag("--chamfer", metrics_o.do_chamfer, "Chamfer distance");
  metrics_cmd->add_flag("--exact-emd", metrics_o.do_emd,
                        "Exact earth mover's distance");
  metrics_cmd->add_flag("--sinkhorn", metrics_o.do_sinkhorn,
                        "Debiased Sinkhorn divergence");
  metrics_cmd->add_flag("--combined", metrics_o.do_combined, "Combined loss");
  metrics_cmd->add_flag("--csv", metrics_o.csv,
                        "Emit metric,value,seconds,note CSV instead of text");
  metrics_cmd->add_option("--blur", metrics_o.sp.blur, "Sinkhorn blur")
      ->capture_default_str();
  metrics_cmd->add_option("--scaling", metrics_o.sp.scaling,
                          "Sinkhorn annealing factor")
      ->capture_default_str();
  metrics_cmd
      ->add_option("--max-iters", metrics_o.sp.max_iters,
                   "Sinkhorn iteration cap")
      ->capture_default_str();
  metrics_cmd->add_option("--alpha-emd", metrics_o.alpha_emd,
                          "Combined: EMD-term weight")
      ->capture_default_str();
  metrics_cmd->add_option("--alpha-chamfer", metrics_o.alpha_chamfer,
                          "Combined: chamfer weight")
      ->capture_default_str();
  metrics_cmd->add_option("--norm", metrics_o.norm,
                          "Combined: EMD-term normalization")
      ->check(CLI::IsMember({"sum", "mean"}))
      ->capture_default_str();
  metrics_cmd->add_option("--emd-mode", metrics_o.emd_mode,
                          "Combined: exact or sinkhorn EMD term")
      ->check(CLI::IsMember({"exact", "sinkhorn"}))
      ->capture_default_str();
  metrics_cmd->callback([&] {
    set_max_threads(threads);
    run_metrics(metrics_o);
  });

  GenDatasetOpts gd_o;
  auto* gd_cmd = app.add_subcommand("gen-dataset",
                                    "Generate a synthetic shape corpus");
  gd_cmd->add_option("--count", gd_o.count, "Number of clouds")
      ->capture_default_str();
  gd_cmd->add_option("--points", gd_o.points, "Points per cloud")
      ->capture_default_str();
  gd_cmd->add_option("--seed", gd_o.seed, "Master seed")->capture_default_str();
  gd_cmd->add_option("--out-dir", gd_o.out_dir, "Output directory")->required();
  gd_cmd->callback([&] {
    set_max_threads(threads);
    run_gen_dataset(gd_o);
  });

  GenDesignOpts gde_o;
  auto* gde_cmd =
      app.add_subcommand("gen-design", "Generate a design (style) cloud");
  gde_cmd->add_option("--kind", gde_o.kind, "stripes, porous or cuts")
      ->check(CLI::IsMember({"stripes", "porous", "cuts"}))
      ->required();
  gde_cmd->add_option("--points", gde_o.points, "Points")->capture_default_str();
  gde_cmd->add_option("--seed", gde_o.seed, "RNG seed")->capture_default_str();
  gde_cmd->add_option("--period", gde_o.period, "stripes: slab period")
      ->capture_default_str();
  gde_cmd->add_option("--thickness", gde_o.thickness, "stripes: slab thickness")
      ->capture_default_str();
  gde_cmd->add_option("--voids", gde_o.voids, "porous: number of voids")
      ->capture_default_str();
  gde_cmd->add_option("--cuts", gde_o.cuts, "cuts: number of slits")
      ->capture_default_str();
  gde_cmd->add_option("--cut-width", gde_o.cut_width, "cuts: slit width")
      ->capture_default_str();
  gde_cmd->add_option("--out", gde_o.out, "Output file")->required();
  gde_cmd->callback([&] {
    set_max_threads(threads);
    run_gen_design(gde_o);
  });

  SvgOpts svg_o;
  auto* svg_cmd =
      app.add_subcommand("export-svg", "Orthographic scatter projection");
  svg_cmd->add_option("--input", svg_o.input, "Input cloud")->required();
  svg_cmd->add_option("--axis", svg_o.axis, "Projection axis")
      ->check(CLI::IsMember({"x", "y", "z"}))
      ->capture_default_str();
  svg_cmd->add_option("--radius", svg_o.radius, "Marker radius (px)")
      ->capture_default_str();
  svg_cmd->add_option("--canvas", svg_o.canvas, "Canvas edge (px)")
      ->capture_default_str();
  svg_cmd->add_flag("--no-normalize", svg_o.no_normalize,
                    "Assume the cloud already lies in the unit cube");
  svg_cmd->add_option("--out", svg_o.out, "Output .svg path")->required();
  svg_cmd->callback([&] {
    set_max_threads(threads);
    run_export_svg(svg_o);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
