#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hlrp/autodiff.hpp"
#include "hlrp/model.hpp"
#include "hlrp/pde.hpp"
#include "hlrp/sampling.hpp"

namespace hlrp {

struct LossWeights {
    double res = 1.0;
    double ic = 1.0;
    double bc = 1.0;
    double w1 = 1.0;  // basis orthogonality penalties
    double w2 = 1.0;
};

struct LossBreakdown {
    double residual_mse = 0.0;
    double ic_mse = 0.0;
    double bc_mse = 0.0;
    double ortho = 0.0;
    double total = 0.0;
};

struct TrainConfig {
    int phase1_epochs = 10000;
    int phase2_epochs = 2000;
    double lr_phase1 = 1e-3;
    double lr_phase2 = 2.5e-4;
    double lr_baseline = 1e-3;
    LossWeights weights;
    uint64_t seed = 0;
    bool shuffle_tasks = false;     // fixed grid order keeps runs reproducible
    double divergence_threshold = 1e6;
    bool adaptive_rank = true;      // phase-2 masks from the ReLU zeros
};

struct EpochRecord {
    int epoch = 0;
    int task = 0;
    LossBreakdown loss;
};
using LossHistory = std::vector<EpochRecord>;

// Weighted PINN loss: interior residual MSE + initial/boundary matching
// + basis orthogonality (low-rank models only).
LossBreakdown pinn_loss(const Model& model, const CollocationSet& data, const ProblemSpec& spec,
                        const LossWeights& w);

// Same, accumulating d(total)/d(param) for every trainable parameter.
LossBreakdown pinn_loss_grad(const Model& model, const CollocationSet& data,
                             const ProblemSpec& spec, const LossWeights& w, GradSet& grads);

// Offline phase: one Adam step per task per epoch, iterating tasks in grid
// order, training basis + input/output layers + hypernetwork jointly.
LossHistory phase1_train(Model& model, const std::vector<ProblemSpec>& tasks,
                         const std::vector<CollocationSet>& data, const TrainConfig& cfg);

// Detaches the hypernetwork: copies s(mu_target) into per-layer learnable
// coefficients and freezes basis, hidden biases and hypernetwork weights.
// With adaptive_rank, coefficients the ReLU produced as exact zeros stay
// frozen at zero. The model output at mu_target is unchanged bitwise.
void phase2_convert(Model& model, const Vec& mu_target, bool adaptive_rank = true);

// conversion with externally supplied coefficients (checkpoint reload path)
void convert_to_phase2(Model& model, const std::vector<Vec>& s_init, bool adaptive_rank);

// Online phase: Adam on {s, input layer, output layer} only.
LossHistory phase2_train(Model& model, const CollocationSet& data, const ProblemSpec& spec,
                         const TrainConfig& cfg);

// Single-task Adam loop for the vanilla PINN and naive low-rank baselines.
LossHistory train_baseline(Model& model, const CollocationSet& data, const ProblemSpec& spec,
                           const TrainConfig& cfg);

// PINN-P: one full-batch step per epoch over the union of all tasks with mu
// appended to the network input.
LossHistory train_pinnp(Model& model, const std::vector<ProblemSpec>& tasks,
                        const std::vector<CollocationSet>& data, const TrainConfig& cfg);

struct ProbeOutcome {
    int epochs = 0;
    bool reached = false;  // false: budget exhausted
};

// First epoch index at which `eval_err` drops below the threshold; 0 when
// the model already qualifies before any training.
ProbeOutcome epochs_to_threshold(const std::function<double()>& eval_err,
                                 const std::function<void()>& train_one_epoch, double threshold,
                                 int budget);

}  // namespace hlrp
