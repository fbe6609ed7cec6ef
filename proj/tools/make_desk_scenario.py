#!/usr/bin/env python3
"""Writes the bundled 35-warehouse desk scenario (synthetic capacities and shares)."""

import argparse
import json
import random

PORT = ("San Pedro Port Complex", "CA", 33.74, -118.26)

# name, state, lat, lon, intermodal
WAREHOUSES = [
    ("Carson", "CA", 33.83, -118.26, True),
    ("Compton", "CA", 33.90, -118.22, True),
    ("Commerce", "CA", 34.00, -118.16, True),
    ("Santa Fe Springs", "CA", 33.95, -118.09, True),
    ("City of Industry", "CA", 34.02, -117.96, True),
    ("Chino", "CA", 34.01, -117.69, True),
    ("Ontario", "CA", 34.06, -117.65, True),
    ("Mira Loma", "CA", 33.99, -117.52, True),
    ("Fontana", "CA", 34.09, -117.44, True),
    ("Rialto", "CA", 34.10, -117.37, True),
    ("San Bernardino", "CA", 34.11, -117.29, True),
    ("Riverside", "CA", 33.95, -117.40, True),
    ("Redlands", "CA", 34.06, -117.18, False),
    ("Moreno Valley", "CA", 33.94, -117.23, False),
    ("Perris", "CA", 33.78, -117.23, False),
    ("Victorville", "CA", 34.54, -117.29, False),
    ("Barstow", "CA", 34.90, -117.02, True),
    ("Tejon", "CA", 34.94, -118.93, False),
    ("Bakersfield", "CA", 35.37, -119.02, True),
    ("Visalia", "CA", 36.33, -119.29, False),
    ("Fresno", "CA", 36.74, -119.79, True),
    ("Tracy", "CA", 37.74, -121.43, False),
    ("Lathrop", "CA", 37.82, -121.28, True),
    ("Stockton", "CA", 37.96, -121.29, False),
    ("Oakland", "CA", 37.80, -122.27, False),
    ("Sacramento", "CA", 38.58, -121.49, True),
    ("Las Vegas", "NV", 36.17, -115.14, True),
    ("North Las Vegas", "NV", 36.24, -115.12, False),
    ("Reno", "NV", 39.53, -119.81, False),
    ("McCarran", "NV", 39.55, -119.47, False),
    ("Phoenix", "AZ", 33.45, -112.07, True),
    ("Goodyear", "AZ", 33.44, -112.36, False),
    ("Tucson", "AZ", 32.22, -110.97, False),
    ("Salt Lake City", "UT", 40.76, -111.89, True),
    ("Ogden", "UT", 41.22, -111.97, False),
]

# state, centroid lat, lon, share (synthetic, loosely shaped like waterborne CA imports)
DESTINATIONS = [
    ("CA", 37.17, -119.45, 0.520),
    ("TX", 31.05, -99.90, 0.085),
    ("AZ", 34.29, -111.66, 0.050),
    ("NV", 39.33, -116.63, 0.040),
    ("IL", 40.04, -89.20, 0.040),
    ("WA", 47.38, -120.45, 0.030),
    ("OR", 43.94, -120.56, 0.030),
    ("UT", 39.32, -111.68, 0.030),
    ("CO", 39.00, -105.55, 0.025),
    ("NY", 42.95, -75.53, 0.020),
    ("GA", 32.68, -83.44, 0.020),
    ("FL", 28.63, -82.45, 0.020),
    ("OH", 40.29, -82.79, 0.015),
    ("PA", 40.90, -77.84, 0.015),
    ("NJ", 40.19, -74.67, 0.015),
    ("TN", 35.86, -86.35, 0.015),
    ("MO", 38.36, -92.46, 0.010),
    ("NM", 34.41, -106.11, 0.010),
]


def build(annual_tons, capacity_lo, capacity_hi, seed, truck_loads, train_service_hours):
    rng = random.Random(seed)
    nodes = [{
        "id": 0, "kind": "port", "name": PORT[0], "state": PORT[1],
        "lat": PORT[2], "lon": PORT[3], "intermodal": True,
    }]
    for i, (name, state, lat, lon, rail) in enumerate(WAREHOUSES, start=1):
        cap = round(rng.uniform(capacity_lo, capacity_hi), -1)
        nodes.append({
            "id": i, "kind": "warehouse", "name": name, "state": state,
            "lat": lat, "lon": lon, "intermodal": rail, "capacity_tons": cap,
        })
    shares = []
    for j, (state, lat, lon, share) in enumerate(DESTINATIONS, start=100):
        nodes.append({
            "id": j, "kind": "destination", "name": state, "state": state,
            "lat": lat, "lon": lon,
        })
        shares.append({"destination": j, "share": share})
    return {
        "name": "desk35",
        "description": ("Synthetic desk-scale network: one port, 35 aggregated warehouses in CA, NV, AZ "
                        "and UT, 18 destination states. Locations are real cities; capacities and "
                        "demand shares are synthetic."),
        "nodes": nodes,
        "vehicle_spec": {"train_service_hours": train_service_hours},
        "demand": {"annual_tons": annual_tons, "shares": shares},
        "port": {"trucks": 15, "trains": 2, "truck_loads": truck_loads},
        "total_warehouse_trucks": 280,
        "horizon_months": 12,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--annual-tons", type=float, default=12 * (10 * 4079 + 800))
    ap.add_argument("--capacity-lo", type=float, default=4500)
    ap.add_argument("--capacity-hi", type=float, default=18000)
    ap.add_argument("--truck-loads", choices=["any", "tail"], default="tail")
    ap.add_argument("--train-service-hours", type=float, default=24)
    ap.add_argument("--seed", type=int, default=35)
    ap.add_argument("out")
    args = ap.parse_args()
    doc = build(args.annual_tons, args.capacity_lo, args.capacity_hi, args.seed, args.truck_loads,
                args.train_service_hours)
    with open(args.out, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
