#pragma once

#include <array>
#include <numbers>

#include "attnav/env.hpp"
#include "attnav/layers.hpp"
#include "attnav/render.hpp"

namespace attnav {

// Value network for the navigation agent. Conv trunk over the 3-channel
// semantic frame with the sub-goal (angle, distance) embedded after conv1 as
// two sigmoid-squashed constant maps, then a fully connected Q head over the
// three actions. The trunk's final feature map F is the attachment point for
// the attention branch.
//
//   input [3,64,64]
//   conv1 3->16 k8 s4, relu            -> [16,15,15]
//   subgoal: broadcast 2 scalars, 1x1 conv 2->2, sigmoid -> [2,15,15]
//   concat                             -> [18,15,15]
//   conv2 18->32 k4 s2, relu           -> [32,6,6]
//   conv3 32->32 k3 s1, relu           -> F [32,4,4]
//   fc 512->256, relu; fc 256->3       -> Q [forward, turn_left, turn_right]
template <typename T>
class DqnNetworkT {
public:
    static constexpr int kFrameSize = 64;
    static constexpr int kConv1Out = 15;
    static constexpr int kFeatureChannels = 32;
    static constexpr int kFeatureSide = 4;

    explicit DqnNetworkT(double subgoal_distance_max = 5.0)
        : d_max_(subgoal_distance_max),
          conv1_("conv1", kNumClasses, 16, 8, 4, 0),
          relu1_("relu1"),
          embed_broadcast_("embed.broadcast", kConv1Out, kConv1Out),
          embed_conv_("embed.conv", 2, 2, 1, 1, 0),
          embed_sigmoid_("embed.sigmoid"),
          concat_("concat"),
          conv2_("conv2", 18, 32, 4, 2, 0),
          relu2_("relu2"),
          conv3_("conv3", 32, 32, 3, 1, 0),
          relu3_("relu3"),
          fc1_("fc1", kFeatureChannels * kFeatureSide * kFeatureSide, 256),
          relu4_("relu4"),
          fc2_("fc2", 256, kNumActions) {}

    void init_weights(Rng& rng) {
        conv1_.init_weights(rng);
        embed_conv_.init_weights(rng);
        conv2_.init_weights(rng);
        conv3_.init_weights(rng);
        fc1_.init_weights(rng);
        fc2_.init_weights(rng);
    }

    double subgoal_distance_max() const { return d_max_; }

    // Q-values for a one-hot encoded frame and raw sub-goal polar input.
    // Caches all activations; the feature map and conv relu outputs stay
    // available until the next forward.
    std::array<T, kNumActions> forward_q(const TensorT<T>& frame, const SubGoalPolar& sg) {
        require(frame.shape == std::vector<int>({kNumClasses, kFrameSize, kFrameSize}),
                str("dqn: expected frame [", kNumClasses, ",", kFrameSize, ",", kFrameSize,
                    "], got ", shape_str(frame.shape)));
        TensorT<T> sgin({2});
        sgin.data[0] = static_cast<T>(sg.angle / std::numbers::pi);
        sgin.data[1] = static_cast<T>(std::clamp(sg.distance, 0.0, d_max_) / d_max_);

        relu1_out_ = relu1_.forward(conv1_.forward(frame));
        embed_out_ = embed_sigmoid_.forward(embed_conv_.forward(embed_broadcast_.forward(sgin)));
        TensorT<T> merged = concat_.forward(relu1_out_, embed_out_);
        relu2_out_ = relu2_.forward(conv2_.forward(merged));
        feature_ = relu3_.forward(conv3_.forward(relu2_out_));

        TensorT<T> flat = feature_;
        flat.shape = {kFeatureChannels * kFeatureSide * kFeatureSide};
        TensorT<T> q = fc2_.forward(relu4_.forward(fc1_.forward(flat)));
        return {q.data[0], q.data[1], q.data[2]};
    }

    const TensorT<T>& feature_map() const { return feature_; }
    const TensorT<T>& relu1_out() const { return relu1_out_; }
    const TensorT<T>& relu2_out() const { return relu2_out_; }

    // Accumulates parameter gradients from a gradient w.r.t. the Q vector.
    void backward_from_q(const std::array<T, kNumActions>& dq) {
        require(!frozen_, "dqn: gradient write on a frozen network");
        TensorT<T> g({kNumActions});
        g.data = {dq[0], dq[1], dq[2]};
        TensorT<T> dflat = fc1_.backward(relu4_.backward(fc2_.backward(g)));
        dflat.shape = {kFeatureChannels, kFeatureSide, kFeatureSide};
        TensorT<T> dmerged = conv2_.backward(relu2_.backward(conv3_.backward(relu3_.backward(dflat))));
        auto [da, db] = concat_.backward(dmerged);
        conv1_.backward(relu1_.backward(da));
        embed_broadcast_.backward(embed_conv_.backward(embed_sigmoid_.backward(db)));
    }

    std::vector<ParamRef<T>> parameters() {
        std::vector<ParamRef<T>> out;
        for (auto* layer : {&conv1_, &embed_conv_, &conv2_, &conv3_})
            for (auto& p : layer->parameters()) out.push_back(p);
        for (auto& p : fc1_.parameters()) out.push_back(p);
        for (auto& p : fc2_.parameters()) out.push_back(p);
        return out;
    }

    void zero_grads() {
        for (auto& p : parameters()) p.tensor->zero_grad();
    }

    void set_frozen(bool f) { frozen_ = f; }
    bool frozen() const { return frozen_; }

    // Copies parameter values from another instance (same architecture).
    template <typename U>
    void copy_parameters_from(DqnNetworkT<U>& other) {
        auto src = other.parameters();
        auto dst = parameters();
        require(src.size() == dst.size(), "dqn: parameter list mismatch");
        for (size_t i = 0; i < src.size(); ++i) {
            require(src[i].tensor->shape == dst[i].tensor->shape, "dqn: parameter shape mismatch");
            for (int j = 0; j < src[i].tensor->numel(); ++j)
                dst[i].tensor->data[j] = static_cast<T>(src[i].tensor->data[j]);
        }
    }

private:
    double d_max_;
    bool frozen_ = false;

    Conv2d<T> conv1_;
    Relu<T> relu1_;
    BroadcastScalars<T> embed_broadcast_;
    Conv2d<T> embed_conv_;
    Sigmoid<T> embed_sigmoid_;
    ConcatChannels<T> concat_;
    Conv2d<T> conv2_;
    Relu<T> relu2_;
    Conv2d<T> conv3_;
    Relu<T> relu3_;
    FullyConnected<T> fc1_;
    Relu<T> relu4_;
    FullyConnected<T> fc2_;

    TensorT<T> relu1_out_, embed_out_, relu2_out_, feature_;
};

using DqnNetwork = DqnNetworkT<float>;

template <typename T>
int argmax3(const std::array<T, kNumActions>& q) {
    int best = 0;
    for (int i = 1; i < kNumActions; ++i)
        if (q[i] > q[best]) best = i;
    return best;
}

}  // namespace attnav
