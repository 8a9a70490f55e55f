#ifndef SSAUG_CNN_HPP
#define SSAUG_CNN_HPP

#include <memory>
#include <string>
#include <vector>

#include "ssaug/rng.hpp"
#include "ssaug/time_series.hpp"

namespace ssaug {

// Compact 1D convolutional classifier: forward pass, exact backpropagation
// of softmax cross-entropy, ADAM with 1/(1+decay*t) learning-rate decay.
// Activations flow through the layers as (channels x length) matrices;
// dense stages use column vectors.

class Layer {
public:
    virtual ~Layer() = default;
    virtual Eigen::MatrixXd forward(const Eigen::MatrixXd& in, bool train, Rng* rng) = 0;
    // grad wrt input; parameter gradients accumulate into the layer
    virtual Eigen::MatrixXd backward(const Eigen::MatrixXd& grad_out) = 0;
    virtual std::vector<Eigen::MatrixXd*> params() { return {}; }
    virtual std::vector<Eigen::MatrixXd*> grads() { return {}; }
    virtual std::string kind() const = 0;
    void zero_grads();
};

// valid (no padding) convolution, no bias; weights (out_ch, in_ch*kernel)
class Conv1D : public Layer {
public:
    Conv1D(int in_ch, int out_ch, int kernel);
    Eigen::MatrixXd forward(const Eigen::MatrixXd& in, bool train, Rng* rng) override;
    Eigen::MatrixXd backward(const Eigen::MatrixXd& grad_out) override;
    std::vector<Eigen::MatrixXd*> params() override { return {&w}; }
    std::vector<Eigen::MatrixXd*> grads() override { return {&gw}; }
    std::string kind() const override { return "conv1d"; }

    int in_ch, out_ch, kernel;
    Eigen::MatrixXd w, gw;

private:
    Eigen::MatrixXd cache_in_;  // stored transposed: (length, in_ch)
};

class Relu : public Layer {
public:
    Eigen::MatrixXd forward(const Eigen::MatrixXd& in, bool train, Rng* rng) override;
    Eigen::MatrixXd backward(const Eigen::MatrixXd& grad_out) override;
    std::string kind() const override { return "relu"; }

private:
    Eigen::MatrixXd cache_in_;
};

enum class PoolMode { Max, Average };

// non-overlapping pooling, width 2 by default; trailing remainder dropped
class Pool1D : public Layer {
public:
    explicit Pool1D(int width = 2, PoolMode mode = PoolMode::Max) : width(width), mode(mode) {}
    Eigen::MatrixXd forward(const Eigen::MatrixXd& in, bool train, Rng* rng) override;
    Eigen::MatrixXd backward(const Eigen::MatrixXd& grad_out) override;
    std::string kind() const override { return "pool"; }

    int width;
    PoolMode mode;

private:
    Eigen::MatrixXi argmax_;
    Eigen::Index in_len_ = 0;
};

// (channels x length) -> (channels*length x 1), channel-major
class Flatten : public Layer {
public:
    Eigen::MatrixXd forward(const Eigen::MatrixXd& in, bool train, Rng* rng) override;
    Eigen::MatrixXd backward(const Eigen::MatrixXd& grad_out) override;
    std::string kind() const override { return "flatten"; }

private:
    Eigen::Index rows_ = 0, cols_ = 0;
};

class Dense : public Layer {
public:
    Dense(int in_dim, int out_dim);
    Eigen::MatrixXd forward(const Eigen::MatrixXd& in, bool train, Rng* rng) override;
    Eigen::MatrixXd backward(const Eigen::MatrixXd& grad_out) override;
    std::vector<Eigen::MatrixXd*> params() override { return {&w, &b}; }
    std::vector<Eigen::MatrixXd*> grads() override { return {&gw, &gb}; }
    std::string kind() const override { return "dense"; }

    Eigen::MatrixXd w, b, gw, gb;

private:
    Eigen::MatrixXd cache_in_;
};

// inverted dropout: scaled by 1/(1-rate) at train time, identity at inference
class Dropout : public Layer {
public:
    explicit Dropout(double rate) : rate(rate) {}
    Eigen::MatrixXd forward(const Eigen::MatrixXd& in, bool train, Rng* rng) override;
    Eigen::MatrixXd backward(const Eigen::MatrixXd& grad_out) override;
    std::string kind() const override { return "dropout"; }

    double rate;

private:
    Eigen::MatrixXd mask_;
};

class CnnModel {
public:
    int input_len = 91;
    int num_classes = 3;
    std::vector<std::unique_ptr<Layer>> layers;

    // softmax probabilities over the classes
    Eigen::VectorXd forward(const Eigen::VectorXd& input, bool train = false, Rng* rng = nullptr) const;

    // forward + full backprop of softmax cross-entropy; parameter gradients
    // accumulate into the layers, return value is the loss
    double backward(const Eigen::VectorXd& input, int true_label, bool train = false, Rng* rng = nullptr);

    void zero_grads();
    std::size_t param_count() const;
    std::vector<Eigen::MatrixXd*> all_params();
    std::vector<Eigen::MatrixXd*> all_grads();
};

// the reference architecture: conv16k5/pool2, conv32k5/pool2, conv32k3/pool2,
// dense64+dropout, dense32+dropout, dense3, ReLU throughout, ~24.3k params
CnnModel reference_model(int input_len, std::uint64_t init_seed, double dropout_rate = 0.3,
                         PoolMode pool = PoolMode::Max);

struct AdamState {
    double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    std::uint64_t t = 0;  // global update count
    std::vector<Eigen::MatrixXd> m, v;
};

// one ADAM update with bias correction at effective rate base_lr/(1+decay*t)
void adam_step(AdamState& state, std::vector<Eigen::MatrixXd*> weights,
               const std::vector<Eigen::MatrixXd*>& gradients, double base_lr, double decay);

struct TrainConfig {
    int batch_size = 20;
    int epochs = 20;
    double learning_rate = 0.001;
    double decay = 1e-6;
    double train_fraction = 0.8;
    int input_len = 91;
    double dropout_rate = 0.3;
    std::uint64_t seed = 0;
};

enum class LabelScheme { Auto, Identity, MergeLowScores };

// raw score -> class index in {0,1,2}; MergeLowScores folds 0 and 1 together
int map_label(int label, LabelScheme scheme);

struct EpochStats {
    double train_loss = 0.0;
    double train_accuracy = 0.0;
    double val_accuracy = 0.0;
};

struct TrainResult {
    CnnModel model;
    std::vector<EpochStats> history;
};

// stratified 80/20 split by label, deterministic shuffling from cfg.seed,
// mini-batch ADAM training; inputs are canonicalized to cfg.input_len
TrainResult train(const Dataset& dataset, const TrainConfig& cfg,
                  LabelScheme scheme = LabelScheme::Auto);

struct EvalResult {
    double accuracy = 0.0;
    Eigen::MatrixXi confusion;  // row = true class, col = predicted
};

EvalResult evaluate(const CnnModel& model, const Dataset& dataset,
                    LabelScheme scheme = LabelScheme::Auto);

void save_model(const CnnModel& model, const std::string& path);
CnnModel load_model(const std::string& path);

}  // namespace ssaug

#endif
