#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hlrp/jet.hpp"
#include "hlrp/linalg.hpp"

namespace hlrp {

// Named parameter tensors with a trainable flag each; iteration follows
// insertion order so every walk over the store is deterministic.
class ParamStore {
  public:
    struct Entry {
        std::string name;
        Matrix value;
        bool trainable = true;
    };

    Matrix& add(const std::string& name, Matrix value, bool trainable = true);
    bool has(const std::string& name) const { return index_.count(name) > 0; }
    Matrix& at(const std::string& name);
    const Matrix& at(const std::string& name) const;
    bool trainable(const std::string& name) const;
    void set_trainable(const std::string& name, bool flag);

    const std::vector<Entry>& entries() const { return items_; }
    std::vector<Entry>& entries() { return items_; }
    size_t count() const { return items_.size(); }

    // number of scalars in trainable tensors
    long trainable_scalars() const;
    std::vector<std::string> trainable_names() const;

  private:
    std::vector<Entry> items_;
    std::unordered_map<std::string, size_t> index_;
};

// Gradients keyed like the trainable subset of a ParamStore.
class GradSet {
  public:
    Matrix& accumulate(const std::string& name, int rows, int cols);
    bool has(const std::string& name) const { return index_.count(name) > 0; }
    const Matrix& at(const std::string& name) const;
    Matrix& at(const std::string& name);
    const std::vector<std::pair<std::string, Matrix>>& entries() const { return items_; }
    size_t count() const { return items_.size(); }

  private:
    std::vector<std::pair<std::string, Matrix>> items_;
    std::unordered_map<std::string, size_t> index_;
};

// Records jet operations applied to parameters from a ParamStore and plays
// them backwards to accumulate parameter gradients. Nodes form a DAG (a
// node may feed several later ops); backward seeds may target several
// roots at once, which is how multi-term losses are handled.
class Tape {
  public:
    explicit Tape(const ParamStore& params) : params_(&params) {}

    int input(JetBatch seed);
    int affine(const std::string& w, const std::string& b, int in);  // b == "" -> no bias
    int affine_t(const std::string& w, int in);
    int diag(const std::string& s, int in);
    int diag_node(int s_node, int in);
    int tanh(int in);
    int relu(int in);

    const JetBatch& value(int node) const { return nodes_[node].out; }
    int node_count() const { return static_cast<int>(nodes_.size()); }

    // Accumulates d(loss)/d(param) into grads for every trainable parameter
    // reachable from the seeded roots. Seed jets hold d(loss)/d(channel).
    void backward(const std::vector<std::pair<int, JetBatch>>& seeds, GradSet& grads) const;

  private:
    enum class Op { Input, Affine, AffineT, Diag, DiagNode, Tanh, Relu };
    struct Node {
        Op op;
        int in0 = -1;
        int in1 = -1;  // diag_node coefficient source
        std::string w_name, b_name;
        JetBatch out;
    };

    int push(Node n);

    const ParamStore* params_;
    std::vector<Node> nodes_;
};

// Adam with bias correction; moment tensors mirror the trainable set and
// are created lazily on first use.
struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step = 0;
    std::unordered_map<std::string, std::pair<Matrix, Matrix>> moments;
};

// One optimizer step. Gradients must cover exactly the trainable set of the
// store (shape error otherwise); frozen parameters are untouched.
void adam_step(ParamStore& store, const GradSet& grads, AdamState& state);

// A loss evaluated on tape nodes: the scalar plus adjoint seeds per root.
struct LossEval {
    double value = 0.0;
    std::vector<std::pair<int, JetBatch>> seeds;
};

// Builds the graph via `forward_and_loss`, checks the loss is finite, and
// returns gradients for every trainable parameter. `term` names the loss
// in numeric errors.
GradSet param_grad(const ParamStore& store, const std::string& term,
                   const std::function<LossEval(Tape&)>& forward_and_loss, double* loss_out = nullptr);

}  // namespace hlrp
