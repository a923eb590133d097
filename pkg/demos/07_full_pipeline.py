"""End-to-end run on the bundled case-study fixture.

Generates the deterministic three-level fixture, writes it to canonical
CSV files, reloads them, analyzes every level, validates the scores
against game accuracy, and emits the report JSON plus plot-data CSVs.
The same run is available from the command line:

    gazescore synth --fixture case-study --out fx/
    gazescore analyze --in fx/ --student S10 --out out/
    gazescore validate --in fx/ --student S10
"""
import json
import tempfile
from pathlib import Path

from gazescore import (
    analyze_student,
    build_report,
    emit_plot_data,
    generate_table_fixture,
    load_level_csv,
    merge_levels,
    write_report,
    write_session_set,
)

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    print("1. Generate and persist the fixture:")
    fixture = generate_table_fixture()
    for path in write_session_set(fixture, tmp / "fx"):
        print(f"   wrote {path.name}")

    print("\n2. Reload through the CSV interface and analyze:")
    sessions = [
        load_level_csv(tmp / "fx" / f"S10_level{level}.csv", level, "S10")
        for level in (1, 2, 3)
    ]
    analyses, validation = analyze_student(merge_levels(sessions), "S10")
    for analysis in analyses:
        b = analysis.breakdown
        print(f"   level {analysis.session.level}: "
              f"{analysis.aggregates.total} transitions, "
              f"AoI focus {analysis.features.focus_aoi_pct:.1f}%, "
              f"stimulus focus {analysis.features.sf_pct:.1f}%, "
              f"final score {b.final_score:.2f}")

    print("\n3. Validation against game accuracy:")
    print(f"   MAE {validation.mae_pct:.2f}  RMSE {validation.rmse_pct:.2f}  "
          f"Pearson {validation.pearson_r:.3f}  Spearman {validation.spearman_rho:.3f}")

    print("\n4. Emit the report document and plot data:")
    report = build_report("S10", analyses, validation)
    report_path = write_report(report, tmp / "out" / "report_S10.json")
    plots = emit_plot_data(analyses, tmp / "out" / "plots")
    print(f"   report: {report_path.name} "
          f"({len(json.dumps(report))} bytes, {len(report['levels'])} level blocks)")
    print(f"   plot files: {', '.join(p.name for p in plots)}")
    level3 = report["levels"][2]
    print(f"   level 3 assessment: {level3['assessment']['performance']}, "
          f"calibration {level3['assessment']['calibration']} "
          f"(difference {level3['assessment']['difference']})")
