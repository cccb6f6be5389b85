#include "jetfit/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace jetfit {

UnitVector3::UnitVector3(const Vec3& v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n < 1e-300) {
        throw Error("UnitVector3: input has zero or non-finite norm");
    }
    // Inputs already unit to 1e-12 are kept bit-for-bit (file round trips).
    v_ = std::abs(n - 1.0) <= 1e-12 ? v : Vec3(v / n);
}

UnitVector3 UnitVector3::operator-() const {
    UnitVector3 r;
    r.v_ = -v_;
    return r;
}

Rotation Rotation::axis_angle(const Vec3& axis, double angle_rad) {
    return Rotation(Eigen::Quaterniond(Eigen::AngleAxisd(angle_rad, axis.normalized())));
}

// ---------------------------------------------------------------------------
// KdTree: median-split tree over point indices. Exact search; ties between
// equidistant points resolve to the lower index.

struct KdTree::Impl {
    struct Node {
        int axis = -1;       // -1 marks a leaf
        double split = 0.0;
        int left = -1, right = -1;
        int begin = 0, end = 0;  // leaf range into order
    };

    std::vector<Vec3> pts;
    std::vector<int> order;
    std::vector<Node> nodes;
    static constexpr int kLeafSize = 16;

    int build(int begin, int end) {
        Node node;
        if (end - begin <= kLeafSize) {
            node.begin = begin;
            node.end = end;
            nodes.push_back(node);
            return static_cast<int>(nodes.size()) - 1;
        }
        Vec3 lo = pts[order[begin]], hi = lo;
        for (int i = begin + 1; i < end; ++i) {
            lo = lo.cwiseMin(pts[order[i]]);
            hi = hi.cwiseMax(pts[order[i]]);
        }
        int axis = 0;
        (hi - lo).maxCoeff(&axis);
        const int mid = begin + (end - begin) / 2;
        std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                         [&](int a, int b) {
                             if (pts[a][axis] != pts[b][axis]) return pts[a][axis] < pts[b][axis];
                             return a < b;
                         });
        node.axis = axis;
        node.split = pts[order[mid]][axis];
        const int self = static_cast<int>(nodes.size());
        nodes.push_back(node);
        const int left = build(begin, mid);
        const int right = build(mid, end);
        nodes[self].left = left;
        nodes[self].right = right;
        return self;
    }

    // (distance^2, index) max-heap of current best k.
    using Entry = std::pair<double, int>;
    struct WorseFirst {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;  // larger index counts as worse
        }
    };
    using Heap = std::priority_queue<Entry, std::vector<Entry>, WorseFirst>;

    void search(int node_id, const Vec3& q, int k, Heap& heap) const {
        const Node& node = nodes[node_id];
        if (node.axis < 0) {
            for (int i = node.begin; i < node.end; ++i) {
                const int idx = order[i];
                const double d2 = (pts[idx] - q).squaredNorm();
                Entry e{d2, idx};
                if (static_cast<int>(heap.size()) < k) {
                    heap.push(e);
                } else if (WorseFirst{}(e, heap.top())) {
                    heap.pop();
                    heap.push(e);
                }
            }
            return;
        }
        const double delta = q[node.axis] - node.split;
        const int near = delta < 0 ? node.left : node.right;
        const int far = delta < 0 ? node.right : node.left;
        search(near, q, k, heap);
        if (static_cast<int>(heap.size()) < k || delta * delta <= heap.top().first) {
            search(far, q, k, heap);
        }
    }
};

KdTree::KdTree(const std::vector<Vec3>& points) : impl_(std::make_unique<Impl>()) {
    if (points.empty()) throw Error("KdTree: empty point set");
    impl_->pts = points;
    impl_->order.resize(points.size());
    std::iota(impl_->order.begin(), impl_->order.end(), 0);
    impl_->build(0, static_cast<int>(points.size()));
}

KdTree::~KdTree() = default;
KdTree::KdTree(KdTree&&) noexcept = default;
KdTree& KdTree::operator=(KdTree&&) noexcept = default;

std::size_t KdTree::size() const { return impl_->pts.size(); }

std::vector<int> KdTree::knn(const Vec3& query, int k) const {
    if (k < 1 || k > static_cast<int>(impl_->pts.size())) {
        throw Error("KdTree::knn: k out of range");
    }
    Impl::Heap heap;
    impl_->search(0, query, k, heap);
    std::vector<std::pair<double, int>> found;
    found.reserve(heap.size());
    while (!heap.empty()) {
        found.push_back(heap.top());
        heap.pop();
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::vector<int> out;
    out.reserve(found.size());
    for (const auto& [d2, idx] : found) out.push_back(idx);
    return out;
}

static PatchNeighborhood make_patch(const PointCloud& cloud, int query_index,
                                    std::vector<int> neighbors) {
    PatchNeighborhood patch;
    patch.query_index = query_index;
    patch.neighbor_indices = std::move(neighbors);
    patch.local_points.reserve(patch.neighbor_indices.size());
    const Vec3& q = cloud.points[query_index];
    double max_norm = 0.0;
    for (int idx : patch.neighbor_indices) {
        Vec3 local = cloud.points[idx] - q;
        if (idx == query_index) local.setZero();  // exact, not q - q
        max_norm = std::max(max_norm, local.norm());
        patch.local_points.push_back(local);
    }
    patch.scale_h = max_norm > 0.0 ? max_norm : 1.0;
    return patch;
}

PatchNeighborhood knn_patch(const PointCloud& cloud, int query_index, int k) {
    if (cloud.points.empty()) throw Error("knn_patch: empty cloud");
    KdTree tree(cloud.points);
    return knn_patch(tree, cloud, query_index, k);
}

PatchNeighborhood knn_patch(const KdTree& tree, const PointCloud& cloud, int query_index, int k) {
    const int n = static_cast<int>(cloud.points.size());
    if (n == 0) throw Error("knn_patch: empty cloud");
    if (query_index < 0 || query_index >= n) throw Error("knn_patch: query_index out of range");
    if (k < 1 || k > n) throw Error("knn_patch: k must satisfy 1 <= k <= cloud size");
    return make_patch(cloud, query_index, tree.knn(cloud.points[query_index], k));
}

Rotation rotate_to_z(const UnitVector3& v) {
    // v x z = (v_y, -v_x, 0): exact in floating point, so the axis stays
    // accurate arbitrarily close to the poles.
    const double cx = v.y(), cy = -v.x();
    const double cross_norm = std::hypot(cx, cy);
    if (cross_norm < 1e-8) {
        if (v.z() > 0.0) return Rotation::identity();
        return Rotation(0.0, 1.0, 0.0, 0.0);  // 180 degrees about x
    }
    const double angle = std::atan2(cross_norm, v.z());
    const double s = std::sin(0.5 * angle) / cross_norm;
    return Rotation(std::cos(0.5 * angle), cx * s, cy * s, 0.0);
}

PatchNeighborhood apply_rotation(const Rotation& r, const PatchNeighborhood& patch) {
    PatchNeighborhood out = patch;
    for (Vec3& p : out.local_points) p = r.apply(p);
    return out;
}

}  // namespace jetfit
