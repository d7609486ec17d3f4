{
  "coeff": "Q/Z",
  "kind": "cubical2",
  "values": {
    "e,f": "1/4"
  }
}
