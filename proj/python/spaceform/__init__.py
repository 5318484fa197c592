from ._spaceform import (
    ModelSpace,
    SpaceForm,
    SpaceformError,
    ball_volume,
    clifford_curvature,
    curvature_radius_bound,
    distance,
    geodesic,
    group_elements,
    hopf_map,
    linking_number,
    parallax,
)

__all__ = [
    "ModelSpace",
    "SpaceForm",
    "SpaceformError",
    "ball_volume",
    "clifford_curvature",
    "curvature_radius_bound",
    "distance",
    "geodesic",
    "group_elements",
    "hopf_map",
    "linking_number",
    "parallax",
]
