#!/usr/bin/env python3
# Copyright 2026 The twinfm Authors
# SPDX-License-Identifier: Apache-2.0
"""Writes the synthetic seed fixtures under seed/.

The building layout, room names and item placement are synthetic. Only the
per-category counts are meant to be faithful; see seed/manifest.json.
Output is deterministic, so rerunning leaves the files unchanged.
"""

import argparse
import csv
import json
from pathlib import Path

OFFICE = "13-55 11 00 Office Spaces"
RESTROOM = "13-23 17 00 Restroom"
BREAK = "13-57 17 13 Break Room"
MECH = "13-71 11 00 Mechanical Room"
ELEC = "13-71 13 00 Electrical Room"
CIRC = "13-25 11 00 Circulation Space"
STUDY = "13-15 11 00 Study Room"

MECHANICAL = "23-33 00 00 HVAC Specific Products and Equipment"
ELECTRICAL = "23-04 50 Electrical"
PLUMBING = "23-41 00 00 Plumbing Specific Products and Equipment"
CONVEYING = "23-23 00 00 Conveying Equipment"
COMMUNICATION = "23-37 00 00 Information and Communication Equipment"

# name -> (system, type, count, placement)
CATEGORIES = {
    "air_handling_unit": (MECHANICAL, "23-33 13 00 Air Handling Units", 3, "mech"),
    "energy_recovery_unit": (MECHANICAL, "23-33 13 13 Energy Recovery Units", 1, "mech"),
    "variable_air_volume_box": (MECHANICAL, "23-33 17 00 Variable Air Volume Boxes", 1, "mech"),
    "hot_water_pump": (MECHANICAL, "23-33 23 00 Hot Water Pumps", 2, "mech"),
    "temperature_sensor": (MECHANICAL, "23-33 41 13 Temperature Sensors", 30, "rooms"),
    "humidity_sensor": (MECHANICAL, "23-33 41 11 Humidity Sensors", 20, "rooms"),
    "co_sensor": (MECHANICAL, "23-33 41 15 Carbon Monoxide Sensors", 20, "rooms"),
    "lighting_fixture": (ELECTRICAL, "23-35 47 00 Electrical Lighting", 300, "all"),
    "transformer": (ELECTRICAL, "23-35 11 00 Transformers", 2, "elec"),
    "faucet": (PLUMBING, "23-41 21 11 Faucets", 16, "restrooms"),
    "sink": (PLUMBING, "23-41 21 13 Sinks", 16, "restrooms"),
    "toilet": (PLUMBING, "23-41 21 15 Toilets", 16, "restrooms"),
    "urinal": (PLUMBING, "23-41 21 17 Urinals", 8, "mens"),
    "service_sink": (PLUMBING, "23-41 21 19 Service Sinks", 4, "break"),
    "water_heater": (PLUMBING, "23-41 25 00 Water Heaters", 8, "mech"),
    "drinking_fountain": (PLUMBING, "23-41 21 21 Drinking Fountains", 2, "circ"),
    "elevator": (CONVEYING, "23-23 11 00 Elevators", 2, "circ"),
    "generator": (ELECTRICAL, "23-35 13 00 Generators", 1, "elec"),
    "occupancy_sensor": (COMMUNICATION, "23-37 41 00 Occupancy Sensors", 60, "rooms"),
}
HEADLINE_TOTAL = 509

PANEL = (ELECTRICAL, "23-35 15 00 Panelboards")


def spaces():
    rows = [
        (MECH, "Central Plant", "B01", "B"),
        (ELEC, "Main Electrical", "B02", "B"),
        (CIRC, "Basement Corridor", "B03", "B"),
        (STUDY, "Archive Stacks", "B04", "B"),
    ]
    for floor in range(1, 5):
        for n in range(1, 12):
            number = floor * 100 + n
            if floor == 1 and n == 1:
                rows.append((OFFICE, "Main Study Area", "Room 101", "1"))
            elif floor == 2 and n == 11:
                rows.append((STUDY, "Group Study 230", "Room 230", "2"))
            else:
                kind = OFFICE if n % 2 else STUDY
                rows.append((kind, f"{'Office' if n % 2 else 'Study'} {number}", f"Room {number}", str(floor)))
        if floor == 1:
            rows.append((STUDY, "Reading Room", "140", "1"))
        mens = "A" if floor == 1 else f"{floor}A"
        womens = "B" if floor == 1 else f"{floor}B"
        rows.append((RESTROOM, "Men's RRs", f"Restroom {mens}", str(floor)))
        rows.append((RESTROOM, "Women's RRs", f"Restroom {womens}", str(floor)))
        rows.append((BREAK, f"Break Room {floor}", f"Break {floor}", str(floor)))
        rows.append((CIRC, f"Elevator Lobby {floor}", f"Lobby {floor}", str(floor)))
    return rows


def placements(space_rows):
    by = {
        "mech": ["B01"],
        "elec": ["B02"],
        "circ": [r[2] for r in space_rows if r[0] == CIRC and r[3] != "B"],
        "restrooms": [r[2] for r in space_rows if r[0] == RESTROOM],
        "mens": [r[2] for r in space_rows if r[0] == RESTROOM and r[1] == "Men's RRs"],
        "break": [r[2] for r in space_rows if r[0] == BREAK],
        "rooms": [r[2] for r in space_rows if r[0] in (OFFICE, STUDY)],
        "all": [r[2] for r in space_rows],
    }
    return by


def properties(name, i):
    if name == "lighting_fixture":
        return {"lamp": "LED", "wattage": {"value": 40, "unit": "W"}}
    if name in ("air_handling_unit", "energy_recovery_unit"):
        return {"manufacturer": "Synthetic Air Co", "model": f"AH-{20 + i}", "airflow": {"value": 8000, "unit": "cfm"}}
    if name == "generator":
        return {"manufacturer": "Synthetic Power", "rating": {"value": 500, "unit": "kW"}, "fuel": "diesel"}
    if name == "transformer":
        return {"rating": {"value": 300, "unit": "kVA"}, "primary_voltage": {"value": 480, "unit": "V"}}
    if name == "elevator":
        return {"capacity": {"value": 3500, "unit": "lb"}, "stops": 5}
    if name == "water_heater":
        return {"capacity": {"value": 50, "unit": "gal"}}
    return {}


def equipment(space_rows):
    where = placements(space_rows)
    rows = []
    for name, (system, type_, count, placement) in CATEGORIES.items():
        targets = where[placement]
        for i in range(count):
            props = properties(name, i)
            rows.append((system, type_, "", "", targets[i % len(targets)], "",
                         json.dumps(props, separators=(",", ":")) if props else "", "false"))
    rows.append((PANEL[0], PANEL[1], "", "", "B02", "",
                 json.dumps({"phases": 3, "rating": {"value": 400, "unit": "A"}}, separators=(",", ":")), "true"))
    return rows


SENSOR_HEADER = ["omniclass_type", "kind", "dashboard_support", "max_items", "unit", "interval_s", "low", "high",
                 "baseline", "diurnal_amplitude", "noise_sigma"]
SENSORS = [
    # Room and sensor equipment; these are the counted bindings.
    ("23-33 41 13", "temperature", "false", "", "", "", "", "", "", "", ""),
    ("23-33 41 11", "humidity", "false", "", "", "", "", "", "", "", ""),
    ("23-33 41 15", "co", "false", "", "", "", "", "", "", "", ""),
    ("23-37 41 00", "occupancy", "false", "", "", "", "", "", "", "", ""),
    # Dashboard equipment.
    ("23-33 13 00", "temperature", "true", "", "F", "300", "50", "60", "55", "2", "0.5"),
    ("23-33 13 00", "humidity", "true", "", "", "", "", "", "", "", ""),
    ("23-33 13 00", "flow_rate", "true", "", "cfm", "300", "4000", "12000", "8000", "1500", "200"),
    ("23-41 21 21", "flow_rate", "true", "", "gpm", "60", "0", "2", "0.5", "0.3", "0.1"),
    ("23-41 21 21", "pressure", "true", "", "psi", "300", "5", "25", "15", "1", "0.5"),
    ("23-35 15 00", "load", "true", "", "", "", "", "", "", "", ""),
    ("23-35 15 00", "power", "true", "", "kW", "60", "0", "320", "180", "60", "8"),
    ("23-23 11 00", "runtime", "true", "", "", "", "", "", "", "", ""),
    ("23-23 11 00", "load", "true", "", "", "", "", "", "", "", ""),
    ("23-35 13 00", "runtime", "true", "", "", "", "", "", "0.01", "0", "0.002"),
    ("23-35 13 00", "fuel_level", "true", "", "", "", "", "", "", "", ""),
    ("23-35 13 00", "load", "true", "", "", "", "", "", "5", "2", "1"),
    ("23-35 47 00", "power", "true", "20", "W", "300", "0", "60", "38", "4", "1"),
    ("23-35 11 00", "voltage", "true", "", "", "", "", "", "", "", ""),
    ("23-35 11 00", "amperage", "true", "", "", "", "", "", "", "", ""),
    ("23-35 11 00", "power", "true", "", "kW", "300", "0", "300", "150", "40", "10"),
    ("23-41 21 15", "flow_rate", "true", "4", "gpm", "60", "0", "3.5", "1.6", "0.5", "0.3"),
    ("23-33 23 00", "pressure", "true", "", "", "", "", "", "", "", ""),
    ("23-33 23 00", "flow_rate", "true", "", "gpm", "60", "10", "80", "40", "10", "3"),
    ("23-33 23 00", "power", "true", "", "kW", "300", "0", "7.5", "3.7", "0.5", "0.2"),
]

RULES = [
    ("23-33 13 00", "temperature", "50", "60", "2", "3"),
    ("23-35 13 00", "fuel_level", "25", "100", "1", "1"),
]

POLICIES = [
    ("PM-001", "equipment_type", "23-35 13 00", "check fuel|run load test", "30", "2024-01-01",
     "diesel fuel:50|oil filter:1"),
    ("PM-002", "equipment_type", "23-33 13 00", "replace filters|inspect belts|clean coils", "90", "2024-01-01",
     "MERV 13 filter:4"),
    ("PM-003", "room", "Restroom A", "clean fixtures|restock supplies", "1", "2024-01-01",
     "paper towels:2|soap refill:1"),
    ("PM-004", "equipment_type", "23-23 11 00", "inspect doors|test emergency phone", "30", "2024-01-15", ""),
    ("PM-005", "equipment_type", "23-41 21 21", "replace filter", "90", "2024-02-01", "fountain filter:1"),
    ("PM-006", "equipment_type", "23-41 25 00", "flush tank|test relief valve", "180", "2024-01-01", ""),
]

DOCUMENTS = [
    ("DOC-00001", "23-35 13 00", "cut_sheet", "Standby generator cut sheet", "docs/generator-cut-sheet.pdf",
     "2024-01-02T09:00:00Z"),
    ("DOC-00002", "23-33 13 00", "operation_manual", "AHU operation and maintenance manual", "docs/ahu-om-manual.pdf",
     "2024-01-02T09:00:00Z"),
    ("DOC-00003", "23-23 11 00", "warranty", "Elevator warranty", "docs/elevator-warranty.pdf",
     "2024-01-02T09:00:00Z"),
]


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "seed"))
    out = Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)

    space_rows = spaces()
    write_csv(out / "spaces.csv", ["Room-Category", "Room-Name", "Room-Tag", "Room-AugmentID", "Floor-Level"],
              [(c, n, t, "", fl) for c, n, t, fl in space_rows])
    write_csv(out / "equipment.csv",
              ["OMNICLASS_SYSTEM", "OMNICLASS_TYPE", "AugmentID_Type", "AugmentID_Instance", "Space_Instance",
               "Discipline", "OM_Properties", "Dashboard_Support"],
              equipment(space_rows))
    write_csv(out / "sensors.csv", SENSOR_HEADER, SENSORS)
    write_csv(out / "rules.csv", ["omniclass_type", "kind", "low", "high", "raise_debounce", "clear_debounce"], RULES)
    write_csv(out / "policies.csv",
              ["policy_id", "target_kind", "target", "tasks", "frequency_days", "start_date", "resources"], POLICIES)
    write_csv(out / "documents.csv", ["doc_id", "omniclass_type", "kind", "title", "uri", "uploaded_at"], DOCUMENTS)

    counted = {"temperature_sensor", "humidity_sensor", "co_sensor", "occupancy_sensor"}
    manifest = {
        "version": 1,
        "space_count": len(space_rows),
        "equipment_counts": {n: {"omniclass_type": t.split(" ", 3)[0] + " " + " ".join(t.split(" ")[1:3]),
                                 "count": c} for n, (_, t, c, _) in CATEGORIES.items()},
        "sensor_binding_count": sum(CATEGORIES[n][2] for n in counted),
        "policy_count": len(POLICIES),
        "headline_total": HEADLINE_TOTAL,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
