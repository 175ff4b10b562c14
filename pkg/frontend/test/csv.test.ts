import { describe, expect, it } from "vitest";

import { SchemaError, numeric, parseCsv, toRecords } from "../src/csv.js";

describe("parseCsv", () => {
  it("splits simple rows", () => {
    expect(parseCsv("a,b\n1,2\n3,4\n")).toEqual([
      ["a", "b"],
      ["1", "2"],
      ["3", "4"],
    ]);
  });

  it("handles quoted fields with commas and escaped quotes", () => {
    expect(parseCsv('label,x\n"one, two",3\n"say ""hi""",4\n')).toEqual([
      ["label", "x"],
      ["one, two", "3"],
      ['say "hi"', "4"],
    ]);
  });

  it("ignores blank lines and CRLF endings", () => {
    expect(parseCsv("a,b\r\n1,2\r\n\r\n")).toEqual([
      ["a", "b"],
      ["1", "2"],
    ]);
  });
});

describe("toRecords", () => {
  it("maps header to fields", () => {
    const recs = toRecords(
      [
        ["a", "b"],
        ["1", "2"],
      ],
      ["a", "b"],
      "f.csv",
    );
    expect(recs).toEqual([{ a: "1", b: "2" }]);
  });

  it("names the missing column", () => {
    expect(() => toRecords([["a"]], ["a", "epsilon"], "pc.csv")).toThrowError(
      /pc\.csv: missing column 'epsilon'/,
    );
  });

  it("rejects an empty file", () => {
    expect(() => toRecords([], ["a"], "e.csv")).toThrowError(SchemaError);
  });
});

describe("numeric", () => {
  it("parses and names offenders", () => {
    expect(numeric({ x: "2.5" }, "x", "f.csv", 1)).toBe(2.5);
    expect(() => numeric({ x: "oops" }, "x", "f.csv", 7)).toThrowError(
      /row 7: column 'x'/,
    );
  });
});
