// GENERATED by scripts/make_fixtures.py -- do not edit by hand.
// Preloaded datasets: one point cloud, one image, one barcode file.
import type { Dataset } from "./types.js";

export const SAMPLES: Record<string, Dataset> = {
  "points": {
    "kind": "points",
    "name": "sample point cloud (noisy circle)",
    "payload": {
      "points": [
        [
          -0.435345,
          -0.865561
        ],
        [
          0.224112,
          0.982965
        ],
        [
          -0.352724,
          0.89992
        ],
        [
          0.301967,
          -0.940078
        ],
        [
          0.988563,
          -0.026081
        ],
        [
          0.639656,
          0.79567
        ],
        [
          0.861158,
          0.464485
        ],
        [
          0.426822,
          0.919366
        ],
        [
          -0.637519,
          0.774119
        ],
        [
          0.49412,
          0.89373
        ],
        [
          -0.858022,
          -0.535181
        ],
        [
          -0.804098,
          -0.725303
        ],
        [
          0.762496,
          0.594418
        ],
        [
          -0.970839,
          -0.425424
        ],
        [
          0.979455,
          0.028499
        ],
        [
          -0.929329,
          0.206999
        ],
        [
          1.048143,
          -0.161812
        ],
        [
          0.298884,
          -0.931236
        ],
        [
          -0.804686,
          -0.56044
        ],
        [
          -0.424289,
          0.82821
        ],
        [
          0.242455,
          0.861627
        ],
        [
          -0.965628,
          0.363317
        ],
        [
          -0.165067,
          0.927157
        ],
        [
          0.734428,
          -0.734817
        ]
      ],
      "max_scale": 2.0,
      "max_dim": 2
    }
  },
  "image": {
    "kind": "image",
    "name": "sample image (two blobs)",
    "payload": {
      "image": {
        "width": 8,
        "height": 8,
        "intensities": [
          0.0,
          0.0,
          0.0,
          0.0,
          0.0,
          0.0,
          0.0,
          0.0,
          0.0,
          0.324652,
          0.535262,
          0.535276,
          0.324761,
          0.0,
          0.0,
          0.0,
          0.0,
          0.535262,
          0.882521,
          0.882985,
          0.538868,
          0.0,
          0.0,
          0.0,
          0.0,
          0.535267,
          0.882793,
          0.888443,
          0.579198,
          0.316345,
          0.0,
          0.0,
          0.0,
          0.324677,
          0.536588,
          0.561911,
          0.521564,
          0.654694,
          0.561911,
          0.0,
          0.0,
          0.0,
          0.0,
          0.0,
          0.444085,
          0.926434,
          0.892301,
          0.325979,
          0.0,
          0.0,
          0.0,
          0.0,
          0.0,
          0.545065,
          0.537449,
          0.0,
          0.0,
          0.0,
          0.0,
          0.0,
          0.0,
          0.0,
          0.0,
          0.0
        ]
      },
      "direction": "upper_star"
    }
  },
  "barcode": {
    "kind": "barcode",
    "name": "sample barcode file",
    "payload": "dim,birth,death\n0,0.0,1.5\n0,0.0,0.75\n0,0.2,inf\n1,0.5,2.0\n1,0.5,2.0\n1,1.25,1.75\n"
  }
};
