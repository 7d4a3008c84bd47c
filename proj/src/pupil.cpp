#include "vigilsim/pupil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace vigilsim::pupil {

GrayImage difference_image(const synth::FramePair& pair) {
    if (pair.even.width != pair.odd.width || pair.even.height != pair.odd.height) {
        throw std::invalid_argument("frame fields have mismatched dimensions");
    }
    GrayImage diff(pair.even.width, pair.even.height);
    for (std::size_t i = 0; i < diff.size(); ++i) {
        const int d = int(pair.even.pixels[i]) - int(pair.odd.pixels[i]);
        diff.pixels[i] = std::uint8_t(std::max(d, 0));
    }
    return diff;
}

BinaryImage threshold(const GrayImage& img, int tau) {
    BinaryImage bin(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i) {
        bin.bits[i] = img.pixels[i] >= tau ? 1 : 0;
    }
    return bin;
}

std::vector<Blob> connected_components(const BinaryImage& bin, const GrayImage& diff,
                                       std::vector<int>* labels_out) {
    if (bin.width != diff.width || bin.height != diff.height) {
        throw std::invalid_argument("mask and difference image have mismatched dimensions");
    }
    const int w = bin.width;
    const int h = bin.height;
    std::vector<int> label(std::size_t(w) * h, -1);
    std::vector<Blob> blobs;
    std::vector<std::pair<int, int>> stack;

    for (int sy = 0; sy < h; ++sy) {
        for (int sx = 0; sx < w; ++sx) {
            const std::size_t sidx = std::size_t(sy) * w + sx;
            if (!bin.bits[sidx] || label[sidx] >= 0) continue;

            const int id = int(blobs.size());
            label[sidx] = id;
            stack.push_back({sx, sy});

            int area = 0;
            int min_x = sx, max_x = sx, min_y = sy, max_y = sy;
            double wsum = 0.0, wx = 0.0, wy = 0.0;
            double ux = 0.0, uy = 0.0;  // unweighted fallback
            int perimeter = 0;

            while (!stack.empty()) {
                const auto [x, y] = stack.back();
                stack.pop_back();
                ++area;
                min_x = std::min(min_x, x);
                max_x = std::max(max_x, x);
                min_y = std::min(min_y, y);
                max_y = std::max(max_y, y);
                const double wpx = diff.at(x, y);
                wsum += wpx;
                wx += wpx * x;
                wy += wpx * y;
                ux += x;
                uy += y;

                // Exposed 4-edges count toward the perimeter.
                static constexpr int d4x[4] = {1, -1, 0, 0};
                static constexpr int d4y[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int nx = x + d4x[k];
                    const int ny = y + d4y[k];
                    if (!bin.inside(nx, ny) || !bin.at(nx, ny)) ++perimeter;
                }

                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (!bin.inside(nx, ny)) continue;
                        const std::size_t nidx = std::size_t(ny) * w + nx;
                        if (bin.bits[nidx] && label[nidx] < 0) {
                            label[nidx] = id;
                            stack.push_back({nx, ny});
                        }
                    }
                }
            }

            Blob b;
            b.area = area;
            b.centroid = wsum > 0.0 ? Vec2{wx / wsum, wy / wsum} : Vec2{ux / area, uy / area};
            b.bbox = {min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
            const double p2 = double(perimeter) * perimeter;
            b.circularity =
                p2 > 0.0 ? std::clamp(4.0 * std::numbers::pi * area / p2, 0.0, 1.0) : 0.0;
            blobs.push_back(b);
        }
    }

    std::vector<int> order(blobs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&blobs](int i, int j) {
        const Blob& a = blobs[i];
        const Blob& b = blobs[j];
        if (a.area != b.area) return a.area > b.area;
        if (a.bbox.y != b.bbox.y) return a.bbox.y < b.bbox.y;
        return a.bbox.x < b.bbox.x;
    });

    std::vector<Blob> sorted;
    sorted.reserve(blobs.size());
    std::vector<int> rank(blobs.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        rank[order[pos]] = int(pos);
        sorted.push_back(blobs[order[pos]]);
    }

    if (labels_out) {
        labels_out->assign(label.size(), -1);
        for (std::size_t i = 0; i < label.size(); ++i) {
            if (label[i] >= 0) (*labels_out)[i] = rank[label[i]];
        }
    }
    return sorted;
}

PupilObservation select_pupils(const std::vector<Blob>& blobs, const PupilConstraints& c,
                               double t) {
    std::vector<const Blob*> ok;
    for (const Blob& b : blobs) {
        if (b.area >= c.min_area && b.area <= c.max_area && b.circularity >= c.min_circularity) {
            ok.push_back(&b);
        }
    }

    PupilObservation obs;
    obs.t = t;

    const Blob* best_a = nullptr;
    const Blob* best_b = nullptr;
    int best_sum = -1;
    double best_left_x = 0.0;
    for (std::size_t i = 0; i < ok.size(); ++i) {
        for (std::size_t j = i + 1; j < ok.size(); ++j) {
            const double dx = std::abs(ok[i]->centroid.x - ok[j]->centroid.x);
            const double dy = std::abs(ok[i]->centroid.y - ok[j]->centroid.y);
            if (dx < c.min_separation_px || dx > c.max_separation_px) continue;
            if (dy > c.max_vertical_skew_px) continue;
            const int sum = ok[i]->area + ok[j]->area;
            const double left_x = std::min(ok[i]->centroid.x, ok[j]->centroid.x);
            if (sum > best_sum || (sum == best_sum && left_x < best_left_x)) {
                best_sum = sum;
                best_left_x = left_x;
                best_a = ok[i];
                best_b = ok[j];
            }
        }
    }

    if (best_a && best_b) {
        const Blob* lhs = best_a->centroid.x <= best_b->centroid.x ? best_a : best_b;
        const Blob* rhs = lhs == best_a ? best_b : best_a;
        obs.left = EyeDetection{lhs->centroid, lhs->area};
        obs.right = EyeDetection{rhs->centroid, rhs->area};
        obs.confidence = 1.0;
        return obs;
    }

    if (!ok.empty()) {
        // Side is unresolved for a lone detection; report it in the left slot.
        obs.left = EyeDetection{ok.front()->centroid, ok.front()->area};
        obs.confidence = 0.5;
        return obs;
    }

    obs.confidence = 0.0;
    return obs;
}

PupilObservation detect(const synth::FramePair& pair, int tau, const PupilConstraints& c) {
    const GrayImage diff = difference_image(pair);
    const BinaryImage bin = threshold(diff, tau);
    const std::vector<Blob> blobs = connected_components(bin, diff);
    return select_pupils(blobs, c, pair.t);
}

}  // namespace vigilsim::pupil
