#pragma once

#include <optional>
#include <vector>

#include "vigilsim/geometry.hpp"
#include "vigilsim/image.hpp"
#include "vigilsim/synth.hpp"

namespace vigilsim::pupil {

struct Rect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;
};

struct Blob {
    int area = 0;        // pixel count
    Vec2 centroid;       // intensity-weighted over the difference image
    Rect bbox;
    double circularity = 0.0;  // 4*pi*area / perimeter^2, clamped to [0,1]
};

// With the exposed-edge perimeter a rasterized disk scores about 0.5-0.6 and
// a glint hole knocks off up to 0.2 more, so the shape gate sits at 0.25.
struct PupilConstraints {
    int min_area = 20;
    int max_area = 600;
    double min_circularity = 0.25;
    double min_separation_px = 20.0;
    double max_separation_px = 200.0;
    double max_vertical_skew_px = 12.0;
};

struct EyeDetection {
    Vec2 centroid;
    int area = 0;
};

// confidence: 1.0 both pupils, 0.5 one (reported in the left slot), 0.0 none.
struct PupilObservation {
    double t = 0.0;
    std::optional<EyeDetection> left;
    std::optional<EyeDetection> right;
    double confidence = 0.0;
};

// Per-pixel max(even - odd, 0). Throws std::invalid_argument on dimension
// mismatch.
GrayImage difference_image(const synth::FramePair& pair);

// Bit set iff intensity >= tau.
BinaryImage threshold(const GrayImage& img, int tau);

// 8-connected components of the set pixels, centroids weighted by the
// difference image, sorted by descending area (ties by bbox y, then x).
// If labels_out is given it receives one entry per pixel: the index of the
// owning blob in the returned vector, or -1 for clear pixels.
std::vector<Blob> connected_components(const BinaryImage& bin, const GrayImage& diff,
                                       std::vector<int>* labels_out = nullptr);

// Filters blobs by area and circularity, then picks the pair with admissible
// horizontal separation and vertical skew maximizing summed area; falls back
// to the best single blob, else an empty observation.
PupilObservation select_pupils(const std::vector<Blob>& blobs, const PupilConstraints& c,
                               double t);

// difference_image -> threshold -> connected_components -> select_pupils.
PupilObservation detect(const synth::FramePair& pair, int tau, const PupilConstraints& c);

}  // namespace vigilsim::pupil
