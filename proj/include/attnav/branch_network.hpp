#pragma once

#include <array>

#include "attnav/dqn_network.hpp"
#include "attnav/layers.hpp"

namespace attnav {

// Explanation-only branch attached to the frozen trunk's feature map F.
// A padded 3x3 conv keeps the spatial size, a 1x1 conv maps to one channel
// per action, and GAP + softmax yield action probabilities. The k channel
// maps are the source of the attention map.
template <typename T>
class AttentionBranchT {
public:
    static constexpr int kChannels = DqnNetworkT<T>::kFeatureChannels;
    static constexpr int kSide = DqnNetworkT<T>::kFeatureSide;

    AttentionBranchT()
        : conv1_("abn.conv1", kChannels, kChannels, 3, 1, 1),
          relu_("abn.relu"),
          conv2_("abn.conv2", kChannels, kNumActions, 1, 1, 0),
          gap_("abn.gap"),
          softmax_("abn.softmax") {}

    void init_weights(Rng& rng) {
        conv1_.init_weights(rng);
        conv2_.init_weights(rng);
    }

    // Action probabilities from the trunk feature map. Caches the channel
    // maps M for attention_raw().
    std::array<T, kNumActions> forward(const TensorT<T>& feature) {
        require(feature.shape == std::vector<int>({kChannels, kSide, kSide}),
                str("branch: expected feature [", kChannels, ",", kSide, ",", kSide, "], got ",
                    shape_str(feature.shape)));
        channel_maps_ = conv2_.forward(relu_.forward(conv1_.forward(feature)));
        TensorT<T> p = softmax_.forward(gap_.forward(channel_maps_));
        return {p.data[0], p.data[1], p.data[2]};
    }

    // Mean over the k channel maps from the last forward, at feature
    // resolution (un-normalized).
    TensorT<T> attention_raw() const {
        require(channel_maps_.numel() > 0, "branch: attention_raw before forward");
        TensorT<T> out({kSide, kSide});
        int hw = kSide * kSide;
        for (int c = 0; c < kNumActions; ++c)
            for (int i = 0; i < hw; ++i) out.data[i] += channel_maps_.data[c * hw + i];
        for (auto& v : out.data) v /= static_cast<T>(kNumActions);
        return out;
    }

    // Accumulates branch gradients from d(loss)/d(logits); the gradient is
    // not propagated into the trunk.
    void backward_from_logits(const std::array<T, kNumActions>& dlogits) {
        TensorT<T> g({kNumActions});
        g.data = {dlogits[0], dlogits[1], dlogits[2]};
        conv1_.backward(relu_.backward(conv2_.backward(gap_.backward(g))));
    }

    std::vector<ParamRef<T>> parameters() {
        std::vector<ParamRef<T>> out;
        for (auto& p : conv1_.parameters()) out.push_back(p);
        for (auto& p : conv2_.parameters()) out.push_back(p);
        return out;
    }

    void zero_grads() {
        for (auto& p : parameters()) p.tensor->zero_grad();
    }

    template <typename U>
    void copy_parameters_from(AttentionBranchT<U>& other) {
        auto src = other.parameters();
        auto dst = parameters();
        require(src.size() == dst.size(), "branch: parameter list mismatch");
        for (size_t i = 0; i < src.size(); ++i)
            for (int j = 0; j < src[i].tensor->numel(); ++j)
                dst[i].tensor->data[j] = static_cast<T>(src[i].tensor->data[j]);
    }

private:
    Conv2d<T> conv1_;
    Relu<T> relu_;
    Conv2d<T> conv2_;
    GlobalAvgPool<T> gap_;
    Softmax<T> softmax_;
    TensorT<T> channel_maps_;
};

using AttentionBranch = AttentionBranchT<float>;

}  // namespace attnav
