#include "fixture_data.hpp"

namespace ecmo::detail {

const double kTrainDesign0[kTrainRows][kModelDim] = {
    {0.654991, -0.734014, -0.154661},
    {-0.186706, 0.179273, -0.857094},
    {-0.183494, 0.621963, 0.731480},
    {0.140838, -0.678654, -0.349339},
    {-0.606440, 0.296980, -0.358798},
    {0.883087, 0.001461, 0.965046},
    {0.058618, 0.172856, -0.292778},
    {0.910650, -0.931485, -0.633407},
    {-0.571981, -0.095789, 0.106758},
    {0.587700, 0.505583, 0.934900},
    {0.330153, -0.440063, 0.338700},
    {0.666614, -0.918580, 0.390317},
    {-0.720551, 0.006724, 0.542020},
    {0.104053, 0.276529, -0.319174},
    {-0.985815, -0.481939, 0.014850},
    {-0.686619, 0.509171, -0.860043},
    {0.375683, 0.908069, 0.219939},
    {-0.111735, -0.292925, -0.751499},
    {0.713965, 0.604074, -0.993725},
    {-0.038406, 0.318786, 0.449738},
};
const double kTrainTarget0[kTrainRows] = {0.255343, 0.164193, -0.105922, -0.202574, -0.399853, 0.712259, 0.120049, 0.630862, -0.586594, 0.567488, -0.028950, 0.171651, -0.898496, 0.291552, -1.324272, -0.251951, 0.782932, -0.104862, 1.309610, -0.084166};
const double kTrainDesign1[kTrainRows][kModelDim] = {
    {0.230643, 0.296485, -0.774047},
    {0.454361, -0.515891, 0.895376},
    {-0.114961, 0.002890, -0.851522},
    {0.456531, 0.218755, 0.191628},
    {-0.268395, -0.415142, 0.777221},
    {-0.542748, 0.001900, -0.093681},
    {0.500140, 0.054808, 0.413856},
    {0.574670, 0.940140, 0.654257},
    {-0.034473, 0.789123, -0.190189},
    {-0.972634, -0.655917, -0.385412},
    {-0.815120, 0.912786, -0.809756},
    {-0.460240, -0.588768, 0.603874},
    {-0.507871, 0.016361, 0.234290},
    {-0.867600, 0.500522, -0.679772},
    {0.085199, -0.166567, -0.596187},
    {-0.591868, -0.854384, -0.381981},
    {0.037949, 0.571950, -0.252346},
    {0.122731, -0.598868, 0.579647},
    {-0.921683, -0.841448, 0.894257},
    {0.470797, 0.975166, -0.750078},
};
const double kTrainTarget1[kTrainRows] = {-0.315851, -0.124353, -0.602056, 0.113778, 0.287584, 0.103354, 0.160736, 1.196867, 0.579417, -0.500908, 0.761079, 0.126097, 0.380859, 0.376468, -0.628851, -0.841156, 0.439437, -0.323269, 0.308711, 0.244609};
const double kValDesign0[kValRows][kModelDim] = {
    {-0.681446, 0.197905, -0.802451},
    {0.622158, -0.512126, -0.712869},
    {-0.938634, -0.515077, -0.897103},
    {0.322440, 0.837721, 0.535640},
    {-0.388024, -0.304822, -0.607971},
    {-0.335805, -0.555539, 0.124781},
    {-0.162539, 0.069321, 0.901776},
    {-0.504802, 0.154546, -0.221031},
    {0.942987, 0.092991, 0.683797},
    {-0.044627, -0.692913, 0.980689},
};
const double kValTarget0[kValRows] = {-0.377301, 0.504483, -0.945451, 0.640184, -0.360676, -0.603116, -0.367052, -0.338942, 0.807231, -0.664004};
const double kValDesign1[kValRows][kModelDim] = {
    {-0.583071, -0.210327, 0.909077},
    {0.697612, 0.876846, -0.734339},
    {0.605543, 0.652092, 0.249457},
    {-0.761610, -0.328113, -0.155788},
    {-0.934266, 0.505962, -0.131044},
    {-0.059689, -0.523387, 0.681356},
    {0.348858, -0.851894, -0.207765},
    {0.860174, -0.324418, -0.829090},
    {-0.777871, -0.251899, 0.447635},
    {0.925286, -0.293108, -0.355639},
};
const double kValTarget1[kValRows] = {0.732368, -0.046154, 0.507812, -0.031421, 0.911345, 0.035579, -1.216816, -1.337774, 0.471356, -1.039135};

}  // namespace ecmo::detail
