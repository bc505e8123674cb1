#pragma once

// Embedded data for the toy_data_weighting fixture. Generated once with
// mt19937(20240817), uniform [-1, 1] entries rounded to six decimals;
// targets are design * y_star + scaled noise with y_star = (1, 0.5, -0.25)
// for set 0 and (-0.5, 1, 0.75) for set 1, so the two training sets pull the
// model in conflicting directions.

namespace ecmo::detail {

inline constexpr int kTrainRows = 20;
inline constexpr int kValRows = 10;
inline constexpr int kModelDim = 3;
inline constexpr int kNumTrainSets = 2;
inline constexpr int kNumValSets = 2;

extern const double kTrainDesign0[kTrainRows][kModelDim];
extern const double kTrainDesign1[kTrainRows][kModelDim];
extern const double kTrainTarget0[kTrainRows];
extern const double kTrainTarget1[kTrainRows];
extern const double kValDesign0[kValRows][kModelDim];
extern const double kValDesign1[kValRows][kModelDim];
extern const double kValTarget0[kValRows];
extern const double kValTarget1[kValRows];

}  // namespace ecmo::detail
