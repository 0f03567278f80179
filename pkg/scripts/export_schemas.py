"""Write the CLI input schemas to docs/ as standalone JSON Schema files."""
import json
from pathlib import Path

from orbitcone.schemas import SCHEMAS

DOCS = Path(__file__).resolve().parent.parent / "docs"


def main() -> None:
    for name, schema in SCHEMAS.items():
        path = DOCS / f"{name}.schema.json"
        path.write_text(json.dumps(schema, indent=2) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
