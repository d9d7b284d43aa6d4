#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hlrp/autodiff.hpp"
#include "hlrp/jet.hpp"
#include "hlrp/linalg.hpp"
#include "hlrp/rng.hpp"

namespace hlrp {

enum class Activation { Tanh, Identity, Relu };

struct DenseLayer {
    Matrix w;
    Vec b;
    Activation activation = Activation::Tanh;
};

// Factored hidden layer: effective weight U diag(s) V^T. The coefficient
// vector s lives either here (retrained/naive variants) or comes from the
// hypernetwork at forward time.
struct LowRankLayer {
    Matrix u;  // n_out x r
    Matrix v;  // n_in x r
    Vec s;     // r
    Vec b;     // n_out
    int rank() const { return u.cols; }
};

enum class ModelKind {
    VanillaPinn,   // dense 6-layer MLP on coordinates
    PinnP,         // same MLP with the PDE parameters appended to the input
    NaiveLowRank,  // low-rank trunk, learnable s, frozen basis
    HyperPhase1,   // low-rank trunk driven by the hypernetwork
    HyperPhase2,   // converted trunk: s learnable, basis and hypernetwork frozen
};

struct ArchConfig {
    int in_dim = 2;        // network input width (coords, +mu_dim for PinnP)
    int width = 50;
    int hidden_layers = 3;  // low-rank trunk depth L
    int dense_hidden = 4;   // hidden matrices of the dense baselines (6 FC total)
    int rank = 50;
    int mu_dim = 1;
    int emb_layers = 3;  // hypernetwork embedding depth M
    int emb_width = 50;
    double head_bias = 0.1;       // keeps initial s positive
    bool learnable_basis = false;  // ablation switch: leave U,V trainable in phase 2
};

struct Model {
    ModelKind kind = ModelKind::VanillaPinn;
    ArchConfig arch;
    ParamStore params;
    // phase-2 adaptive-rank masks: s entries killed by the ReLU stay frozen
    // at zero. Empty masks mean every coefficient is live (full-rank mode).
    std::vector<std::vector<uint8_t>> s_mask;

    bool is_low_rank() const {
        return kind == ModelKind::NaiveLowRank || kind == ModelKind::HyperPhase1 ||
               kind == ModelKind::HyperPhase2;
    }
    JetMode jet_mode_2d(bool two_d) const {
        return two_d ? JetMode::Space2D : JetMode::Space1DTime;
    }
};

// Glorot-uniform dense layers, orthonormal U/V columns (QR of Gaussian
// draws), zero biases except the positive hypernetwork head bias.
Model init_model(ModelKind kind, const ArchConfig& arch, Rng& rng);

// Hypernetwork path: mu -> per-layer coefficient vectors, elementwise >= 0.
std::vector<Vec> hyper_forward(const Model& model, const Vec& mu);

// U diag(s) V^T, materialized for analysis/export only; forward passes use
// the factored three-product form.
Matrix effective_weight(const LowRankLayer& layer, const Vec& s);

// Full forward pass on a coordinate seed. `mu` feeds the hypernetwork
// (HyperPhase1) and is ignored by the parameter-free-input models; PinnP
// callers append mu to the seed rows themselves.
JetBatch model_forward(const Model& model, const JetBatch& seed, const Vec& mu);

// Tape-recorded forward; returns the output node.
int model_forward_graph(Tape& tape, const Model& model, int input, const Vec& mu);

// w1 ||U^T U - I||_F^2 + w2 ||V^T V - I||_F^2
double ortho_penalty(const Matrix& u, const Matrix& v, double w1, double w2);
// adds the analytic penalty gradient for every trainable U/V of the trunk;
// returns the summed penalty value
double ortho_penalty_grad(const Model& model, double w1, double w2, GradSet& grads);
double ortho_penalty_total(const Model& model, double w1, double w2);

// per-layer count of coefficients strictly above eps
std::vector<int> nnz_ranks(const std::vector<Vec>& s_set, double eps = 0.0);

// Trainable scalar count under the model's freeze ledger; phase-2 masks
// subtract the frozen zero coefficients.
long count_params(const Model& model);

// Scalars held by the factored trunk representation: (U + V + s) per hidden
// layer plus the dense input/output layers.
long low_rank_storage_count(const Model& model);

// SVD truncation of a dense layer to rank r; keeps the r largest triples
// with the singular values folded into s.
LowRankLayer svd_truncate(const DenseLayer& layer, int r);

// parameter-name helpers shared by IO and training
std::string trunk_in_w();
std::string trunk_in_b();
std::string trunk_out_w();
std::string trunk_out_b();
std::string trunk_u(int layer);
std::string trunk_v(int layer);
std::string trunk_b(int layer);
std::string trunk_s(int layer);
std::string hyper_emb_w(int m);
std::string hyper_emb_b(int m);
std::string hyper_head_w(int layer);
std::string hyper_head_b(int layer);
std::string dense_w(int layer);
std::string dense_b(int layer);

}  // namespace hlrp
