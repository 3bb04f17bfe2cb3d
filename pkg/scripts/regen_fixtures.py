"""Regenerate the golden reports in src/perdomcoh/data/fixtures.

Only run this after an intentional output change; the selftest and the
test-suite compare against these files byte for byte.
"""

from pathlib import Path

from perdomcoh.catalog import REGRESSION_SET, catalog, fixture_slug
from perdomcoh.report import build_report, render

OUT = Path(__file__).resolve().parents[1] / "src" / "perdomcoh" / "data" / "fixtures"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name in REGRESSION_SET:
        report = build_report(catalog(name).with_options(checks=True))
        if report.exit_code:
            raise SystemExit(f"{name}: exit code {report.exit_code}, not writing a fixture")
        (OUT / f"{fixture_slug(name)}.json").write_text(render(report.data, "json"), encoding="utf-8")
        print(f"wrote {fixture_slug(name)}.json")


if __name__ == "__main__":
    main()
