// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "attrgen/core/attribute.hpp"
#include "attrgen/core/image.hpp"

namespace attrgen::data {

enum class VerdictStatus { pass, fail, pending, detection_miss, skipped };

std::string to_string(VerdictStatus status);
VerdictStatus verdict_status_from_string(std::string_view name);

// ---- judge ---------------------------------------------------------------

/// Builds the yes/no question posed to the visual judge. DomainError on any
/// empty argument.
std::string format_verification_query(std::string_view attribute_kind, std::string_view subject,
                                      std::string_view descriptor);
std::string format_verification_query(AttributeKind kind, std::string_view subject, std::string_view descriptor);

/// An image handed to external components: decoded pixels plus, when known,
/// the file it came from (remote adapters upload the file).
struct ImageRef {
    const Image* pixels = nullptr;
    std::filesystem::path path;
};

/// Yes/no visual judge. Implementations return the raw answer text and may
/// throw on transport failures. Must be safe to call from several threads.
class VisualJudge {
public:
    virtual ~VisualJudge() = default;
    virtual std::string id() const = 0;
    virtual std::string ask(const ImageRef& image, const std::string& question) = 0;
};

/// Lowercases, trims, and strips trailing punctuation: "No." -> "no".
std::string normalize_answer(std::string_view raw);

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds backoff{100};
};

struct JudgeVerdict {
    VerdictStatus status = VerdictStatus::skipped;
    std::string query;
    std::string raw_answer;
    int attempts = 0;
    std::string error;
};

/// pass iff the normalized answer is "yes". Exhausted retries give pending.
JudgeVerdict judge_target(VisualJudge& judge, const ImageRef& image, const std::string& query,
                          const RetryPolicy& retry = {});

// ---- similarity ----------------------------------------------------------

/// Similarity in [-1, 1] between two single-channel images of equal size.
class SimilarityScorer {
public:
    virtual ~SimilarityScorer() = default;
    virtual std::string id() const = 0;
    virtual double similarity(const Image& gray_a, const Image& gray_b) = 0;
};

struct SimilarityThresholds {
    double color = 0.98;
    double material = 0.90;
    double custom = 0.90;
    double for_kind(AttributeKind kind) const;
};

struct SimilarityVerdict {
    VerdictStatus status = VerdictStatus::skipped;
    std::optional<double> score;
    double threshold = 0.0;
    std::string scorer_id;
    std::string error;
};

/// Grayscale-converts both images, scores them, and passes iff score >= the
/// kind's threshold. ShapeError on mismatched sizes; scorer failure is pending.
SimilarityVerdict similarity_gate(SimilarityScorer& scorer, const Image& source, const Image& target,
                                  AttributeKind kind, const SimilarityThresholds& thresholds = {});

// ---- background mask -----------------------------------------------------

/// Pixel box, half-open: [x0, x1) x [y0, y1).
struct Box {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;
    bool operator==(const Box&) const = default;
};

class ObjectDetector {
public:
    virtual ~ObjectDetector() = default;
    virtual std::string id() const = 0;
    virtual std::vector<Box> detect(const ImageRef& image, const std::string& phrase) = 0;
};

class MaskGenerator {
public:
    virtual ~MaskGenerator() = default;
    virtual std::string id() const = 0;
    virtual Mask segment(const ImageRef& image, const Box& box) = 0;
};

struct BackgroundMaskResult {
    VerdictStatus status = VerdictStatus::pass;  ///< detection_miss when nothing was found
    Mask object;
    Mask background;
    std::vector<Box> boxes;
};

/// Union of the segmenter's masks (clipped to their boxes) over all detected
/// boxes, then inverted.
BackgroundMaskResult background_mask(ObjectDetector& detector, MaskGenerator& segmenter, const ImageRef& image,
                                     const std::string& subject);

// ---- leakage -------------------------------------------------------------

/// Background pixels whose max-over-channels 8-bit difference exceeds
/// pixel_tolerance. ShapeError on mismatched sizes.
std::size_t leakage_count(const Image& source, const Image& target, const Mask& background, int pixel_tolerance = 0);

struct LeakageOptions {
    std::size_t threshold = 50;
    int pixel_tolerance = 0;
    /// Scale the threshold by pixel count relative to reference_pixels.
    bool scale_with_resolution = true;
    std::size_t reference_pixels = 512 * 512;

    std::size_t effective_threshold(int height, int width) const;
};

/// Discard iff count strictly exceeds the threshold.
inline bool leakage_discard(std::size_t count, std::size_t threshold) { return count > threshold; }

struct LeakageVerdict {
    VerdictStatus status = VerdictStatus::skipped;
    std::optional<std::size_t> count;
    std::size_t threshold = 0;
    std::string error;
};

LeakageVerdict leakage_gate(const Image& source, const Image& target, const Mask& background,
                            const LeakageOptions& options = {});

}  // namespace attrgen::data
